// Copyright 2026 The tfim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "tfim/pauli.hpp"

#include <string>

namespace tfim {

/// {"n_sites": N, "terms": [{"re", "im", "x_mask_hex", "z_mask_hex",
/// "phase_quadrant"}]}
std::string operator_to_json(const OperatorSum& op);
OperatorSum operator_from_json(const std::string& text);

}  // namespace tfim
