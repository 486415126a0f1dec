// Copyright 2026 The uext Authors
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

#include "uext/cli/state_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace uext::cli {

using nlohmann::json;

StateFile parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("state file: ") + e.what());
  }
  StateFile f;
  try {
    f.d_a = j.at("dims").at("A").get<int>();
    f.d_b = j.at("dims").at("B").get<int>();
    if (f.d_a < 1 || f.d_b < 1) throw std::invalid_argument("state file: dims must be positive");
    const int n = f.d_a * f.d_b;
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw std::invalid_argument("state file: matrix must have dA*dB rows");
    f.matrix = Matrix::Zero(n, n);
    for (int r = 0; r < n; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw std::invalid_argument("state file: row " + std::to_string(r) + " has wrong length");
      for (int c = 0; c < n; ++c) {
        const auto& e = row[c];
        if (e.is_number()) {
          f.matrix(r, c) = e.get<double>();
        } else if (e.is_array() && e.size() == 2) {
          f.matrix(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        } else {
          throw std::invalid_argument("state file: entries must be [re, im] pairs");
        }
      }
    }
    if (j.contains("label")) f.label = j.at("label").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("state file: ") + e.what());
  }
  return f;
}

std::string serialize_state(const StateFile& f) {
  json j;
  j["dims"] = {{"A", f.d_a}, {"B", f.d_b}};
  json rows = json::array();
  for (Index r = 0; r < f.matrix.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < f.matrix.cols(); ++c)
      row.push_back({f.matrix(r, c).real(), f.matrix(r, c).imag()});
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  if (!f.label.empty()) j["label"] = f.label;
  return j.dump() + "\n";
}

StateFile load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto f = parse_state(ss.str());
  if (f.label.empty()) f.label = path;
  return f;
}

void save_state_file(const std::string& path, const StateFile& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << serialize_state(f);
}

states::BipartiteState to_state(const StateFile& f) {
  try {
    return states::BipartiteState(linalg::HermitianOperator(f.matrix), f.d_a, f.d_b);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("state file: ") + e.what());
  }
}

StateFile from_state(const states::BipartiteState& rho, const std::string& label) {
  return {rho.d_a(), rho.d_b(), rho.matrix(), label};
}

}  // namespace uext::cli
