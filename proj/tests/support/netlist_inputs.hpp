// Copyright 2026 The slhnet Authors
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

#include <string>
#include <vector>

#include "support/random_slh.hpp"

namespace slhnet::testing {

/// Beamsplitter M feeding a cavity C padded with a pass-through N.
inline constexpr const char* kSeriesExampleNetlist = R"(# beamsplitter feeding a cavity with a pass-through
space c fock 10
param alpha = 0.6
param beta = 0.8
param gamma = 2.0
param delta = 0.5
component M = beamsplitter(alpha, beta)
component C = cavity(c, gamma, delta)
component N = passthrough(1)
connect M -> (C, N)
state coherent(c, 0.5, 0)
run { dt = 0.001  T = 2 }
)";

// Random inputs: raw bytes, token soup, and mutations of valid netlists.
inline std::string fuzz_input(slhnet::testing::Rng& rng) {
  static const std::vector<std::string> tokens = {
      "space", "component", "connect", "couple", "state", "run", "param", "fock", "dim", "grid", "cavity",
      "beamsplitter", "passthrough", "phase", "holevo", "classical_sde", "a", "adag", "n", "id", "sqrt", "exp",
      "x", "i", "pi", "c", "M", "C", "N", "(", ")", "[", "]", "{", "}", ",", ";", "=", "+", "-", "*", "/", "'",
      "->", "\n", " ", "0", "1", "2.5", "1e308", "1e999", "3i", "-7", "S", "L", "H", "dt", "T", "#", "\t"};
  const std::string base = kSeriesExampleNetlist;
  std::string out;
  switch (pick(rng, 0, 2)) {
    case 0: {
      const auto len = pick(rng, 0, 200);
      for (std::size_t k = 0; k < len; ++k) out += static_cast<char>(pick(rng, 0, 255));
      break;
    }
    case 1: {
      const auto len = pick(rng, 0, 120);
      for (std::size_t k = 0; k < len; ++k) out += tokens[pick(rng, 0, tokens.size() - 1)] + " ";
      break;
    }
    default: {
      out = base;
      const auto edits = pick(rng, 1, 8);
      for (std::size_t k = 0; k < edits && !out.empty(); ++k) {
        const auto at = pick(rng, 0, out.size() - 1);
        switch (pick(rng, 0, 2)) {
          case 0:
            out.erase(at, pick(rng, 1, 10));
            break;
          case 1:
            out.insert(at, tokens[pick(rng, 0, tokens.size() - 1)]);
            break;
          default:
            out[at] = static_cast<char>(pick(rng, 0, 255));
        }
      }
    }
  }
  return out;
}

}  // namespace slhnet::testing
