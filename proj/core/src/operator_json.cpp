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

#include "tfim/operator_json.hpp"

#include "tfim/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>

namespace tfim {
namespace {

std::string to_hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t from_hex(const std::string& s) {
  std::string_view digits = s;
  if (digits.starts_with("0x") || digits.starts_with("0X")) digits.remove_prefix(2);
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw InvalidArgument("malformed hexadecimal mask '" + s + "'");
  }
  return v;
}

}  // namespace

std::string operator_to_json(const OperatorSum& op) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : op.terms()) {
    terms.push_back({{"re", t.coefficient.real()},
                     {"im", t.coefficient.imag()},
                     {"x_mask_hex", to_hex(t.string.x_mask())},
                     {"z_mask_hex", to_hex(t.string.z_mask())},
                     {"phase_quadrant", t.string.phase_quadrant()}});
  }
  return nlohmann::json{{"n_sites", op.n_sites()}, {"terms", terms}}.dump(2);
}

OperatorSum operator_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    OperatorSum op(doc.at("n_sites").get<int>());
    for (const auto& t : doc.at("terms")) {
      const int q = t.value("phase_quadrant", 0);
      if (q < 0 || q > 3) throw InvalidArgument("phase_quadrant must lie in 0..3");
      op.add(Complex(t.at("re").get<double>(), t.value("im", 0.0)),
             PauliString(op.n_sites(), from_hex(t.at("x_mask_hex").get<std::string>()),
                         from_hex(t.at("z_mask_hex").get<std::string>()), q));
    }
    return op;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("operator JSON: ") + e.what());
  }
}

}  // namespace tfim
