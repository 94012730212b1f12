// Command-line front end: load matrices and weight sequences from JSON,
// run membership checks, and print human-readable or JSON reports.
//
// Exit codes: 0 all checks passed / Member; 1 definite NonMember or a
// property violation; 2 Inconclusive present; 64 usage error; 65 input
// data error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opclass/classes.hpp"
#include "opclass/gallery.hpp"
#include "opclass/linalg.hpp"
#include "opclass/matrix_io.hpp"
#include "opclass/membership.hpp"
#include "opclass/shifts.hpp"
#include "opclass/spectral.hpp"
#include "opclass/structure.hpp"

namespace {

using nlohmann::json;
using namespace opclass;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct CommonOpts {
  std::string matrix_path;
  std::string weights_path;
  std::string class_name;
  std::optional<int> n;
  std::optional<int> k;
  std::optional<int> mu_grid;
  std::optional<int> restarts;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  bool as_json = false;
};

SearchConfig make_config(const CommonOpts& o) {
  SearchConfig cfg;
  if (o.mu_grid) cfg.mu_grid_points = *o.mu_grid;
  if (o.restarts) cfg.restarts = *o.restarts;
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  return cfg;
}

void emit(const json& report, bool as_json, const std::string& human) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

int exit_for(Status s) {
  switch (s) {
    case Status::Member: return kExitPass;
    case Status::NonMember: return kExitViolation;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string human_verdict(const MembershipVerdict& v) {
  std::string line = to_string(v.class_id) + ": " + to_string(v.status) + "  [engine " +
                     to_string(v.engine) + ", margin " + std::to_string(v.margin) + "]";
  if (v.witness_mu) line += "  mu = " + std::to_string(*v.witness_mu);
  return line + "\n";
}

/// Require the class-applicable parameter flags and reject the rest.
ClassId class_from_flags(const CommonOpts& o) {
  const ClassId parsed = [&] {
    if (o.class_name == "qsp") return ClassId::qsp(o.n.value_or(-1), o.k.value_or(-1));
    if (o.class_name == "qp") return ClassId::qp(o.n.value_or(-1), o.k.value_or(-1));
    if (o.class_name == "qsa") return ClassId::qsa(o.k.value_or(-1));
    if (o.class_name == "qh") return ClassId::qh(o.k.value_or(-1));
    if (o.class_name == "normaloid") return ClassId::normaloid();
    throw CLI::ValidationError("--class", "unknown class '" + o.class_name + "'");
  }();
  const bool needs_n =
      parsed.family == Family::QuasiStarParanormal || parsed.family == Family::QuasiParanormal;
  const bool needs_k = parsed.family != Family::Normaloid;
  if (needs_n && !o.n) throw CLI::ValidationError("--n", "required for class " + o.class_name);
  if (needs_k && !o.k) throw CLI::ValidationError("--k", "required for class " + o.class_name);
  if (!needs_n && o.n) throw CLI::ValidationError("--n", "not applicable to " + o.class_name);
  if (!needs_k && o.k) throw CLI::ValidationError("--k", "not applicable to " + o.class_name);
  validate(parsed);
  return parsed;
}

int run_check(const CommonOpts& o) {
  const ClassId id = class_from_flags(o);
  const ComplexMatrix t = load_matrix(o.matrix_path);
  const SearchConfig cfg = make_config(o);

  std::vector<MembershipVerdict> verdicts;
  if (id.family == Family::Normaloid) {
    verdicts.push_back(check_normaloid(t, o.tol));
  } else {
    verdicts.push_back(check_direct(t, id, cfg));
    if (id.family == Family::QuasiStarClassA) {
      verdicts.push_back(check_quasi_star_class_a(t, *id.k, o.tol));
    } else {
      verdicts.push_back(check_pencil_for(t, id, cfg));
    }
  }

  Status combined = verdicts.front().status;
  if (verdicts.size() == 2) {
    const Status a = verdicts[0].status, b = verdicts[1].status;
    if (a != Status::Inconclusive && b != Status::Inconclusive && a != b) {
      combined = Status::Inconclusive;
    } else if (a == Status::Inconclusive) {
      combined = b;
    }
  }

  json report;
  report["verdicts"] = json::array();
  std::string human;
  for (const auto& v : verdicts) {
    report["verdicts"].push_back(verdict_to_json(v));
    human += human_verdict(v);
  }
  report["combined"] = to_string(combined);
  human += "combined: " + to_string(combined) + "\n";
  emit(report, o.as_json, human);
  return exit_for(combined);
}

int run_classify(const CommonOpts& o) {
  const ComplexMatrix t = load_matrix(o.matrix_path);
  const SearchConfig cfg = make_config(o);
  const int n_max = o.n.value_or(2);
  const int k_max = o.k.value_or(3);
  if (n_max < 0 || k_max < 0) {
    throw CLI::ValidationError("--n/--k", "sweep bounds must be nonnegative");
  }
  const auto rows = classify(t, n_max, k_max, cfg);

  std::string human;
  bool any_non_member = false;
  bool any_inconclusive = false;
  for (const auto& row : rows) {
    human += to_string(row.class_id) + ": " + to_string(row.combined) + "\n";
    any_non_member |= row.combined == Status::NonMember;
    any_inconclusive |= row.combined == Status::Inconclusive;
  }
  emit(classification_to_json(rows), o.as_json, human);
  if (any_non_member) return kExitViolation;
  if (any_inconclusive) return kExitInconclusive;
  return kExitPass;
}

int run_shift_check(const CommonOpts& o) {
  if (!o.n || !o.k) throw CLI::ValidationError("--n/--k", "required for shift-check");
  const WeightSequence ws = load_weights(o.weights_path);
  const auto res = shift_membership(ws, *o.n, *o.k);
  const double norm = shift_norm(ws);
  const double radius = shift_spectral_radius(ws);

  json report{{"holds", res.holds},
              {"first_violation", res.first_violation ? json(*res.first_violation) : json(nullptr)},
              {"n", *o.n},
              {"k", *o.k},
              {"norm", norm},
              {"spectral_radius", radius}};
  std::string human = std::string("criterion at (n, k) = (") + std::to_string(*o.n) + ", " +
                      std::to_string(*o.k) + "): " + (res.holds ? "holds" : "fails");
  if (res.first_violation) human += " (first violation at m = " + std::to_string(*res.first_violation) + ")";
  human += "\nnorm = " + std::to_string(norm) + ", spectral radius = " + std::to_string(radius) + "\n";
  emit(report, o.as_json, human);
  return res.holds ? kExitPass : kExitViolation;
}

int run_decompose(const CommonOpts& o) {
  if (!o.k) throw CLI::ValidationError("--k", "required for decompose");
  const ComplexMatrix t = load_matrix(o.matrix_path);
  const Decomposition d = decompose(t, *o.k, o.tol);

  json report{{"range_dim", d.range_dim},
              {"kernel_dim", d.basis.cols() - d.range_dim},
              {"residual", d.residual},
              {"spectrum_consistent", d.spectrum_consistent},
              {"kernel_block_spectrum_zero", d.kernel_block_spectrum_zero},
              {"basis", matrix_to_json(d.basis)},
              {"range_block", matrix_to_json(d.range_block)},
              {"coupling_block", matrix_to_json(d.coupling_block)},
              {"kernel_block", matrix_to_json(d.kernel_block)}};
  std::string human = "range dimension " + std::to_string(d.range_dim) + ", kernel dimension " +
                      std::to_string(d.basis.cols() - d.range_dim) + "\n" +
                      "block-triangular residual = " + std::to_string(d.residual) + "\n" +
                      std::string("spectrum consistent: ") + (d.spectrum_consistent ? "yes" : "no") +
                      "\n" + std::string("kernel block spectrum at zero: ") +
                      (d.kernel_block_spectrum_zero ? "yes" : "no") + "\n";
  emit(report, o.as_json, human);
  const bool ok = d.spectrum_consistent && d.kernel_block_spectrum_zero;
  return ok ? kExitPass : kExitViolation;
}

int run_similar(const CommonOpts& o, int split) {
  if (!o.k) throw CLI::ValidationError("--k", "required for similar");
  const ComplexMatrix t = load_matrix(o.matrix_path);
  if (split <= 0 || split >= t.rows()) {
    throw CLI::ValidationError("--split", "must cut the matrix into two nonempty blocks");
  }
  const Eigen::Index p = split, q = t.rows() - split;
  const double scale = operator_norm(t);
  const double leakage = t.block(p, 0, q, p).norm();
  if (leakage > o.tol * (1.0 + scale)) {
    throw DataError("similar: lower-left block must vanish (norm " + std::to_string(leakage) +
                    "); expected upper block-triangular input");
  }
  const ComplexMatrix a = t.topLeftCorner(p, p);
  const ComplexMatrix b = t.topRightCorner(p, q);
  const ComplexMatrix c = t.bottomRightCorner(q, q);
  const SimilarityResult sim = build_similarity(a, b, c, *o.k, o.tol);
  const double sylvester_residual = operator_norm(a * sim.s - sim.s * c - b);

  json report{{"sylvester_residual", sylvester_residual},
              {"intertwining_residual", sim.intertwining_residual},
              {"transform", matrix_to_json(sim.w)},
              {"block_diagonal", matrix_to_json(sim.r)}};
  std::string human = "Sylvester residual = " + std::to_string(sylvester_residual) + "\n" +
                      "intertwining residual = " + std::to_string(sim.intertwining_residual) +
                      "\n";
  emit(report, o.as_json, human);
  const bool ok = sim.intertwining_residual <= o.tol * (1.0 + scale) * 100.0;
  return ok ? kExitPass : kExitViolation;
}

int run_spectral(const CommonOpts& o) {
  const ComplexMatrix t = load_matrix(o.matrix_path);
  const SpectralReport report = spectral_report(t, o.k.value_or(1), o.tol);

  std::string human = std::to_string(report.eigenvalues.size()) + " eigenvalue cluster(s), " +
                      std::to_string(report.joint_eigenvalues.size()) + " joint eigenvalue(s)\n" +
                      std::to_string(report.violations.size()) + " violation(s)\n";
  for (const auto& v : report.violations) {
    human += "  " + v.check + " at lambda = " + std::to_string(v.lambda.real()) + "+" +
             std::to_string(v.lambda.imag()) + "i, residual " + std::to_string(v.residual) + "\n";
  }
  emit(spectral_report_to_json(report), o.as_json, human);
  return report.violations.empty() ? kExitPass : kExitViolation;
}

int run_gallery(const CommonOpts& o, const std::string& id) {
  if (id.empty()) {
    json report{{"ids", gallery_ids()}};
    std::string human;
    for (const auto& gid : gallery_ids()) human += gid + "\n";
    emit(report, o.as_json, human);
    return kExitPass;
  }
  GalleryEntry entry;
  try {
    entry = gallery_entry(id);
  } catch (const ParameterError& e) {
    throw CLI::ValidationError("gallery", e.what());
  }

  const auto results = run_expectations(entry);
  bool all_passed = true;
  json expectations = json::array();
  std::string human = entry.id + ": " + entry.description + "\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    all_passed &= results[i].passed;
    expectations.push_back({{"name", entry.expectations[i].name},
                            {"passed", results[i].passed},
                            {"detail", results[i].detail}});
    human += std::string(results[i].passed ? "  [pass] " : "  [FAIL] ") +
             entry.expectations[i].name + " -- " + results[i].detail + "\n";
  }

  const SearchConfig cfg = make_config(o);
  const auto rows = classify(entry.matrix, 2, 3, cfg);
  bool any_non_member = false;
  bool any_inconclusive = false;
  for (const auto& row : rows) {
    any_non_member |= row.combined == Status::NonMember;
    any_inconclusive |= row.combined == Status::Inconclusive;
    human += "  " + to_string(row.class_id) + ": " + to_string(row.combined) + "\n";
  }

  json report{{"id", entry.id},
              {"description", entry.description},
              {"dimension", entry.matrix.rows()},
              {"expectations", std::move(expectations)},
              {"classification", classification_to_json(rows)}};
  emit(report, o.as_json, human);
  if (!all_passed || any_non_member) return kExitViolation;
  if (any_inconclusive) return kExitInconclusive;
  return kExitPass;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool matrix, bool weights) {
  if (matrix) cmd->add_option("--matrix", o.matrix_path, "path to a matrix JSON file");
  if (weights) cmd->add_option("--weights", o.weights_path, "path to a weight-sequence JSON file");
  cmd->add_option("--n", o.n, "power parameter n");
  cmd->add_option("--k", o.k, "compression parameter k");
  cmd->add_option("--mu-grid", o.mu_grid, "number of pencil grid points");
  cmd->add_option("--restarts", o.restarts, "number of search restarts");
  cmd->add_option("--seed", o.seed, "random seed (default 1)");
  cmd->add_option("--tol", o.tol, "tolerance (default 1e-9)");
  cmd->add_flag("--json", o.as_json, "emit a JSON report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"membership checks for quasi-*-paranormal operator families"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string gallery_id;
  int split = 0;

  auto* check = app.add_subcommand("check", "decide membership in one class");
  add_common(check, opts, true, false);
  check->add_option("--class", opts.class_name, "one of qsp, qp, qsa, qh, normaloid")->required();
  check->get_option("--matrix")->required();

  auto* classify_cmd = app.add_subcommand("classify", "sweep all classes (--n/--k set the bounds)");
  add_common(classify_cmd, opts, true, false);
  classify_cmd->get_option("--matrix")->required();

  auto* shift = app.add_subcommand("shift-check", "exact weighted-shift criterion");
  add_common(shift, opts, false, true);
  shift->get_option("--weights")->required();

  auto* dec = app.add_subcommand("decompose", "block-triangularize along the range of T^k");
  add_common(dec, opts, true, false);
  dec->get_option("--matrix")->required();

  auto* sim = app.add_subcommand("similar", "build the block-diagonalizing similarity");
  add_common(sim, opts, true, false);
  sim->add_option("--split", split, "row/column index separating the two diagonal blocks")
      ->required();
  sim->get_option("--matrix")->required();

  auto* spectral_cmd = app.add_subcommand("spectral", "eigenvalue report and property verifiers");
  add_common(spectral_cmd, opts, true, false);
  spectral_cmd->get_option("--matrix")->required();

  auto* gal = app.add_subcommand("gallery", "run a packaged example (no id: list ids)");
  add_common(gal, opts, false, false);
  gal->add_option("id", gallery_id, "gallery entry id, e.g. ex-3.4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(opts);
    if (classify_cmd->parsed()) return run_classify(opts);
    if (shift->parsed()) return run_shift_check(opts);
    if (dec->parsed()) return run_decompose(opts);
    if (sim->parsed()) return run_similar(opts, split);
    if (spectral_cmd->parsed()) return run_spectral(opts);
    if (gal->parsed()) return run_gallery(opts, gallery_id);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
