#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bms/bms_verify.hpp"
#include "bms/oa_extract.hpp"

namespace bms {

inline constexpr int kReportSchemaVersion = 1;

inline nlohmann::json to_json(const GaussInt& z) {
  if (z.is_real()) return z.re;
  return nlohmann::json{{"re", z.re}, {"im", z.im}};
}

inline nlohmann::json to_json(const PairFailure& f) {
  return {{"blocks", f.blocks}, {"rows", {f.row_u, f.row_v}}, {"value", to_json(f.value)}};
}

/// Rows of a 0/1 matrix as strings of '0'/'1'.
inline nlohmann::json to_json(const AgreementMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string r(m.cols(), '0');
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) r[j] = '1';
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json to_json(const SplitCertificate& c) {
  nlohmann::json j;
  j["q"] = c.q;
  j["mode"] = to_string(c.mode);
  j["alpha"] = c.alpha;
  j["first_column_ok"] = c.first_column_ok;
  j["hadamard_ok"] = c.hadamard_ok;
  j["passed"] = c.passed();
  if (c.mode == VerifyMode::blockwise) {
    j["block_gram_ok"] = c.block_gram_ok;
    j["unique_agreement_ok"] = c.unique_agreement_ok;
    j["block_failure_count"] = c.block_failure_count;
    auto fs = nlohmann::json::array();
    for (const auto& f : c.block_failures) fs.push_back(to_json(f));
    j["block_failures"] = std::move(fs);
  } else {
    j["subsets_checked"] = c.subsets_checked;
    j["subsets_failed"] = c.subsets_failed;
    auto fs = nlohmann::json::array();
    for (const auto& f : c.subset_failures) fs.push_back(to_json(f));
    j["subset_failures"] = std::move(fs);
    if (c.seed) j["seed"] = *c.seed;
    if (c.agreement_matrix_B) {
      j["agreement_subset"] = *c.agreement_subset;
      j["agreement_matrix_B"] = to_json(*c.agreement_matrix_B);
    }
  }
  return j;
}

inline nlohmann::json to_json(const EquidistanceSummary& s) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [d, n] : s.histogram) hist[std::to_string(d)] = n;
  return {{"q", s.q}, {"size", s.size}, {"histogram", hist}, {"passed", s.passed()}};
}

}  // namespace bms
