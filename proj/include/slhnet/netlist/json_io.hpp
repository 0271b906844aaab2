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

// JSON encoding of triples. Complex entries are [re, im] pairs and operators
// are row-major d x d arrays of them, so doubles survive a round trip exactly.

#include <string>

#include <json.hpp>

#include "slhnet/network.hpp"

namespace slhnet::netlist {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReducedFormat = "slhnet.reduced.v1";

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json signature_to_json(const Signature& sig) {
  Json out = Json::array();
  for (const auto& f : sig) {
    out.push_back({{"label", f.label}, {"dim", f.dim}, {"kind", std::string(to_string(f.kind))}});
  }
  return out;
}

inline Json operator_matrix_to_json(const OperatorMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(matrix_to_json(m.at(i, j).matrix()));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json chain_report_to_json(const ChainReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back({{"members", b.members}, {"first_channel", b.first_channel}, {"channels", b.channels}});
  }
  return {{"unconnected", r.unconnected},
          {"chains", r.chains},
          {"blocks", blocks},
          {"direct_couplings", r.direct_couplings},
          {"ordering", "unconnected components in registration order, then chains by most-upstream member"}};
}

/// {format, channels, signature, S, L, H[, chain_report]}; L is a list of n operators.
inline Json triple_to_json(const SlhTriple& g, const ChainReport* report = nullptr) {
  Json L = Json::array();
  for (std::size_t j = 0; j < g.channels(); ++j) L.push_back(matrix_to_json(g.L(j).matrix()));
  Json out = {{"format", kReducedFormat},
              {"channels", g.channels()},
              {"signature", signature_to_json(g.signature())},
              {"S", operator_matrix_to_json(g.S())},
              {"L", L},
              {"H", matrix_to_json(g.H().matrix())}};
  if (report) out["chain_report"] = chain_report_to_json(*report);
  return out;
}

namespace json_detail {

inline Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument("complex entry must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Matrix matrix_from(const Json& j, std::size_t d) {
  if (!j.is_array() || j.size() != d) throw InvalidArgument("operator must have " + std::to_string(d) + " rows");
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (!j[i].is_array() || j[i].size() != d) {
      throw InvalidArgument("operator row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
    }
    for (std::size_t k = 0; k < d; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from(j[i][k]);
    }
  }
  return m;
}

}  // namespace json_detail

/// Rebuilds a triple, registering its factors in `registry` (an existing
/// factor with the same label, dim and kind is reused).
inline SlhTriple triple_from_json(const Json& j, SpaceRegistry& registry) {
  try {
    const auto n = j.at("channels").get<std::size_t>();
    Signature sig;
    for (const auto& f : j.at("signature")) {
      const auto label = f.at("label").get<std::string>();
      const auto dim = f.at("dim").get<std::size_t>();
      const auto kind_text = f.at("kind").get<std::string>();
      if (kind_text != "fock" && kind_text != "generic") throw InvalidArgument("unknown space kind '" + kind_text + "'");
      const SpaceKind kind = kind_text == "fock" ? SpaceKind::fock : SpaceKind::generic;
      if (auto existing = registry.find(label)) {
        if (existing->dim != dim || existing->kind != kind) {
          throw SignatureError("space '" + label + "' conflicts with the registered factor");
        }
        sig = unify(sig, {*existing});
      } else {
        sig = unify(sig, {registry.register_space(label, kind, dim)});
      }
    }
    const std::size_t d = signature_dim(sig);
    const Json& S = j.at("S");
    const Json& L = j.at("L");
    if (!S.is_array() || S.size() != n || !L.is_array() || L.size() != n) {
      throw InvalidArgument("S and L must have " + std::to_string(n) + " rows");
    }
    const auto nd = static_cast<Eigen::Index>(n * d);
    const auto di = static_cast<Eigen::Index>(d);
    Matrix s_blocks(nd, nd);
    Matrix l_blocks(nd, di);
    for (std::size_t r = 0; r < n; ++r) {
      if (!S[r].is_array() || S[r].size() != n) throw InvalidArgument("S must be square");
      for (std::size_t c = 0; c < n; ++c) {
        s_blocks.block(static_cast<Eigen::Index>(r) * di, static_cast<Eigen::Index>(c) * di, di, di) =
            json_detail::matrix_from(S[r][c], d);
      }
      l_blocks.block(static_cast<Eigen::Index>(r) * di, 0, di, di) = json_detail::matrix_from(L[r], d);
    }
    return SlhTriple(OperatorMatrix(sig, n, n, s_blocks), OperatorMatrix(sig, n, 1, l_blocks),
                     Operator(sig, json_detail::matrix_from(j.at("H"), d)));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed triple JSON: ") + e.what());
  }
}

}  // namespace slhnet::netlist
