#pragma once

// Command implementations for bmsctl. Kept in a header so the test suite can
// drive the commands in-process.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "bms/bms.hpp"
#include "bms/report.hpp"

namespace bmsctl {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Usage, IO and parse problems; always exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::optional<std::string>& path, const std::string& bytes, std::ostream& out) {
  if (!path || *path == "-") {
    out << bytes;
    return;
  }
  std::ofstream f(*path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write '" + *path + "'");
  f << bytes;
  if (!f) throw UsageError("write to '" + *path + "' failed");
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return ss.str();
}

inline bms::MatrixFile load_matrix(const std::string& path, std::string* bytes_out = nullptr) {
  std::string bytes = read_file(path);
  try {
    auto f = bms::decode_matrix_file(bytes);
    if (bytes_out) *bytes_out = std::move(bytes);
    return f;
  } catch (const bms::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline bms::OrthogonalArray load_oa(const std::string& path, std::string* bytes_out = nullptr) {
  std::string bytes = read_file(path);
  try {
    auto a = bms::decode_oa(bytes);
    if (bytes_out) *bytes_out = std::move(bytes);
    return a;
  } catch (const bms::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline bms::FieldTable field_or_usage(unsigned q) {
  try {
    return bms::FieldTable(q);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--q: ") + e.what());
  }
}

inline unsigned exact_log2(unsigned n) {
  if (n == 0 || (n & (n - 1)) != 0) throw UsageError("order " + std::to_string(n) + " is not a power of two");
  unsigned k = 0;
  while ((1u << k) < n) ++k;
  return k;
}

inline std::string describe(const bms::PairFailure& f) {
  std::ostringstream ss;
  ss << "block" << (f.blocks.size() == 1 ? " " : "s {");
  for (std::size_t i = 0; i < f.blocks.size(); ++i) ss << (i ? "," : "") << f.blocks[i];
  if (f.blocks.size() != 1) ss << "}";
  ss << ", rows " << f.row_u << "," << f.row_v << ": value " << f.value;
  return ss.str();
}

// ---------------------------------------------------------------- commands

inline int cmd_gen_oa(unsigned q, const std::optional<std::string>& out_path, std::ostream& out) {
  const auto ft = field_or_usage(q);
  const auto oa = bms::oa_from_field(ft);
  if (!bms::verify_oa(oa)) throw std::logic_error("generated array failed verification");
  write_output(out_path, bms::encode_oa(oa), out);
  return kPass;
}

inline int cmd_gen_hadamard(unsigned order, const std::string& method, bool quaternary_tensor,
                            const std::optional<std::string>& out_path, std::ostream& out) {
  if (quaternary_tensor) {
    if (order < 2) throw UsageError("--quaternary-tensor needs an order of at least 2");
    write_output(out_path, bms::encode_hadamard(bms::quaternary_tensor_hadamard(exact_log2(order))), out);
    return kPass;
  }
  if (method == "sylvester") {
    const unsigned k = exact_log2(order);
    if (k > 16) throw UsageError("order too large");
    write_output(out_path, bms::encode_hadamard(bms::sylvester(k)), out);
  } else if (method == "paley1") {
    if (order < 4) throw UsageError("paley1 needs order q + 1 with q = 3 (mod 4)");
    const auto ft = field_or_usage(order - 1);
    if ((order - 1) % 4 != 3) throw UsageError("paley1 needs order q + 1 with q = 3 (mod 4)");
    write_output(out_path, bms::encode_hadamard(bms::paley_one(ft)), out);
  } else {
    throw UsageError("unknown method '" + method + "'");
  }
  return kPass;
}

template <bms::UnitMatrix M>
int construct_and_write(const bms::OrthogonalArray& oa, const M& k, const std::optional<std::string>& out_path,
                        std::ostream& out, std::ostream& err) {
  try {
    const auto b = bms::construct_bms(oa, k);
    if (!b.splittable())
      err << "warning: q = " << b.q << " is odd; only the Hadamard property is guaranteed, multi-splittability is undefined\n";
    write_output(out_path, bms::encode_bms(b), out);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kPass;
}

inline int cmd_construct(const std::string& oa_path, const std::string& had_path, const std::optional<std::string>& out_path,
                         std::ostream& out, std::ostream& err) {
  const auto oa = load_oa(oa_path);
  const auto hf = load_matrix(had_path);
  if (bms::is_bms(hf.kind)) throw UsageError(had_path + ": expected a HAD or QHAD file");
  if (hf.header_value != oa.params().q)
    throw UsageError("q mismatch: array has q = " + std::to_string(oa.params().q) + ", Hadamard matrix has order " +
                     std::to_string(hf.header_value));
  return std::visit([&](const auto& k) { return construct_and_write(oa, k, out_path, out, err); }, hf.matrix);
}

struct VerifyArgs {
  std::string input;
  std::string mode;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> report;
};

inline nlohmann::json report_skeleton(const std::string& mode, const std::string& path, const std::string& bytes) {
  nlohmann::json r;
  r["schema_version"] = bms::kReportSchemaVersion;
  r["command"] = "verify";
  r["mode"] = mode;
  r["inputs"] = nlohmann::json::array({{{"path", path}, {"sha256", sha256_hex(bytes)}}});
  return r;
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  std::string bytes;
  nlohmann::json payload;
  bool pass = false;

  if (a.mode == "oa") {
    const auto oa = load_oa(a.input, &bytes);
    pass = bms::verify_oa(oa);
    const auto& p = oa.params();
    payload = {{"N", p.n_rows}, {"k", p.n_cols}, {"q", p.q}, {"t", p.strength}, {"lambda", p.index}, {"passed", pass}};
    out << "orthogonal array OA_" << p.index << "(" << p.n_rows << "," << p.n_cols << "," << p.q << "," << p.strength
        << "): " << (pass ? "pass" : "fail") << "\n";
  } else if (a.mode == "hadamard") {
    const auto f = load_matrix(a.input, &bytes);
    pass = std::visit([](const auto& m) { return bms::is_hadamard(m); }, f.matrix);
    const std::size_t order = std::visit([](const auto& m) { return m.rows(); }, f.matrix);
    payload = {{"order", order}, {"quaternary", bms::is_quaternary(f.kind)}, {"passed", pass}};
    out << "hadamard order " << order << ": " << (pass ? "pass" : "fail") << "\n";
  } else if (a.mode == "blockwise" || a.mode == "exhaustive" || a.mode == "sampled") {
    const auto f = load_matrix(a.input, &bytes);
    if (!bms::is_bms(f.kind)) throw UsageError(a.input + ": mode " + a.mode + " needs a BMS or QBMS file");
    if (f.header_value % 2 != 0) throw UsageError("multi-splittability needs even q, file has q = " + std::to_string(f.header_value));
    bms::VerifyOptions opt;
    if (a.mode == "blockwise") opt.mode = bms::VerifyMode::blockwise;
    else if (a.mode == "exhaustive") opt.mode = bms::VerifyMode::exhaustive;
    else {
      if (!a.seed) throw UsageError("--seed is required with --mode sampled");
      opt.mode = bms::VerifyMode::sampled;
      opt.seed = a.seed;
      opt.samples = a.samples.value_or(100);
    }
    const auto cert = std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          return bms::verify_multi_splittable(f.as_bms<M>(), opt);
        },
        f.matrix);
    pass = cert.passed();
    payload = bms::to_json(cert);
    out << a.mode << " verification, q = " << cert.q << ": " << (pass ? "pass" : "fail") << "\n";
    if (opt.mode != bms::VerifyMode::blockwise)
      out << "subsets checked: " << cert.subsets_checked << ", failed: " << cert.subsets_failed << "\n";
    if (!cert.first_column_ok) err << "first column is not all ones\n";
    if (!cert.hadamard_ok) err << "matrix is not Hadamard\n";
    if (!cert.block_failures.empty()) err << "first failure: " << describe(cert.block_failures.front()) << "\n";
    if (!cert.subset_failures.empty()) err << "first failure: " << describe(cert.subset_failures.front()) << "\n";
    if (opt.mode == bms::VerifyMode::blockwise && !cert.unique_agreement_ok) err << "unique-agreement property violated\n";
  } else {
    throw UsageError("unknown mode '" + a.mode + "'");
  }

  if (a.report) {
    auto r = report_skeleton(a.mode, a.input, bytes);
    r["verdict"] = pass ? "pass" : "fail";
    r["certificate"] = std::move(payload);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r["timing"] = {{"elapsed_ms", ms}};
    write_output(a.report, r.dump(2) + "\n", out);
  }
  return pass ? kPass : kFail;
}

inline int cmd_extract(const std::string& input, const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  const auto f = load_matrix(input);
  if (!bms::is_bms(f.kind)) throw UsageError(input + ": expected a BMS or QBMS file");
  try {
    const auto oa = std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          return bms::extract_oa(f.as_bms<M>());
        },
        f.matrix);
    write_output(out_path, bms::encode_oa(oa), out);
    return kPass;
  } catch (const bms::ExtractionError& e) {
    err << "not balancedly multi-splittable: " << e.what() << "\n";
    return kFail;
  }
}

template <bms::UnitMatrix M>
int roundtrip_with(const bms::OrthogonalArray& oa, const M& k, const bms::VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  const auto b = bms::construct_bms(oa, k);
  out << "constructed order-" << b.order() << " matrix, hadamard: " << (bms::is_hadamard(b.matrix) ? "yes" : "no") << "\n";
  if (!b.splittable()) {
    err << "q is odd; multi-splittability is undefined\n";
    return kUsage;
  }
  const auto cert = bms::verify_multi_splittable(b, opt);
  out << bms::to_string(opt.mode) << " verification: " << (cert.passed() ? "pass" : "fail");
  if (opt.mode != bms::VerifyMode::blockwise) out << " (" << cert.subsets_checked << " subsets)";
  out << "\n";
  if (!cert.passed()) return kFail;
  try {
    const auto back = bms::extract_oa(b);
    const bool same = bms::canonical_relabel(back.array()) == bms::canonical_relabel(oa.array());
    out << "extracted array matches input up to relabeling: " << (same ? "yes" : "no") << "\n";
    return same ? kPass : kFail;
  } catch (const bms::ExtractionError& e) {
    err << "extraction failed: " << e.what() << "\n";
    return kFail;
  }
}

inline int cmd_roundtrip(unsigned q, bool quaternary, const std::string& mode, std::optional<std::uint64_t> samples,
                         std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  const auto ft = field_or_usage(q);
  const auto oa = bms::oa_from_field(ft);
  out << "OA_1(" << oa.params().n_rows << "," << oa.params().n_cols << "," << q << ",2) from GF(" << q << ")\n";
  bms::VerifyOptions opt;
  if (mode == "exhaustive") opt.mode = bms::VerifyMode::exhaustive;
  else if (mode == "blockwise") opt.mode = bms::VerifyMode::blockwise;
  else if (mode == "sampled") {
    if (!seed) throw UsageError("--seed is required with --mode sampled");
    opt.mode = bms::VerifyMode::sampled;
    opt.seed = seed;
    opt.samples = samples.value_or(100);
  } else {
    throw UsageError("unknown mode '" + mode + "'");
  }
  const bool power_of_two = (q & (q - 1)) == 0;
  if (quaternary) {
    if (!power_of_two) throw UsageError("no quaternary Hadamard matrix of order " + std::to_string(q) + " available");
    return roundtrip_with(oa, bms::quaternary_tensor_hadamard(exact_log2(q)), opt, out, err);
  }
  if (!power_of_two) throw UsageError("no Hadamard matrix of order " + std::to_string(q) + " available");
  return roundtrip_with(oa, bms::sylvester(exact_log2(q)), opt, out, err);
}

// ---------------------------------------------------------------- entry point

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balancedly multi-splittable Hadamard matrices and orthogonal arrays", "bmsctl"};
  app.require_subcommand(1);

  unsigned q = 0, order = 0;
  std::optional<std::string> out_path;
  std::string method = "sylvester", oa_path, had_path;
  bool quaternary_tensor = false, quaternary = false;
  VerifyArgs va;
  std::string rt_mode = "exhaustive";
  std::optional<std::uint64_t> rt_samples, rt_seed;

  auto* gen_oa = app.add_subcommand("gen-oa", "Write OA_1(q^2, q+1, q, 2) built from GF(q)");
  gen_oa->add_option("--q", q, "Prime power q")->required();
  gen_oa->add_option("-o,--output", out_path, "Output path (default stdout)");

  auto* gen_h = app.add_subcommand("gen-hadamard", "Write a Hadamard matrix");
  gen_h->add_option("--order", order, "Matrix order")->required();
  gen_h->add_option("--method", method, "sylvester | paley1")->check(CLI::IsMember({"sylvester", "paley1"}));
  gen_h->add_flag("--quaternary-tensor", quaternary_tensor, "Quaternary matrix with +-i entries");
  gen_h->add_option("-o,--output", out_path, "Output path (default stdout)");

  auto* construct = app.add_subcommand("construct", "Build the BMS matrix from an OA and a Hadamard matrix");
  construct->add_option("--oa", oa_path, "OA file")->required();
  construct->add_option("--hadamard", had_path, "HAD or QHAD file")->required();
  construct->add_option("-o,--output", out_path, "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Verify a matrix or array");
  verify->add_option("--input", va.input, "Input file")->required();
  verify->add_option("--mode", va.mode, "hadamard | oa | blockwise | exhaustive | sampled")
      ->required()
      ->check(CLI::IsMember({"hadamard", "oa", "blockwise", "exhaustive", "sampled"}));
  verify->add_option("--samples", va.samples, "Subset samples (sampled mode)");
  verify->add_option("--seed", va.seed, "Sampler seed (required in sampled mode)");
  verify->add_option("--report", va.report, "Write a JSON report here");

  auto* extract = app.add_subcommand("extract", "Recover the orthogonal array from a BMS matrix");
  extract->add_option("--input", oa_path, "BMS or QBMS file")->required();
  extract->add_option("-o,--output", out_path, "Output path (default stdout)");

  auto* roundtrip = app.add_subcommand("roundtrip", "Construct, verify, extract and compare for GF(q)");
  roundtrip->add_option("--q", q, "Prime power q")->required();
  roundtrip->add_flag("--quaternary", quaternary, "Use a quaternary Hadamard matrix");
  roundtrip->add_option("--mode", rt_mode, "exhaustive | blockwise | sampled")
      ->check(CLI::IsMember({"exhaustive", "blockwise", "sampled"}));
  roundtrip->add_option("--samples", rt_samples, "Subset samples (sampled mode)");
  roundtrip->add_option("--seed", rt_seed, "Sampler seed");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen_oa) return cmd_gen_oa(q, out_path, out);
    if (*gen_h) return cmd_gen_hadamard(order, method, quaternary_tensor, out_path, out);
    if (*construct) return cmd_construct(oa_path, had_path, out_path, out, err);
    if (*verify) return cmd_verify(va, out, err);
    if (*extract) return cmd_extract(oa_path, out_path, out, err);
    if (*roundtrip) return cmd_roundtrip(q, quaternary, rt_mode, rt_samples, rt_seed, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bmsctl
