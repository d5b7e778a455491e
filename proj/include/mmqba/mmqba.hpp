// Copyright 2026 The mmqba Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMQBA_MMQBA_HPP
#define MMQBA_MMQBA_HPP

#include "mmqba/analysis.hpp"
#include "mmqba/automaton.hpp"
#include "mmqba/constructions.hpp"
#include "mmqba/emptiness.hpp"
#include "mmqba/format.hpp"
#include "mmqba/numerics.hpp"
#include "mmqba/semantics.hpp"

#endif  // MMQBA_MMQBA_HPP
