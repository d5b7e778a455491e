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

// Internal: report serialization with reals fixed at 17 significant digits,
// so machine-readable output is byte-stable.

#ifndef MMQBA_SRC_JSON_OUT_HPP
#define MMQBA_SRC_JSON_OUT_HPP

#include <string>

#include "json.hpp"

namespace mmqba::detail {

using Json = nlohmann::ordered_json;

/// Like Json::dump(indent) but floats use "%.17g".
std::string dump17(const Json& j, int indent = 2);

}  // namespace mmqba::detail

#endif  // MMQBA_SRC_JSON_OUT_HPP
