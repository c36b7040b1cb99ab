#include "gcover/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcover/certificate.hpp"
#include "gcover/eds_general.hpp"
#include "gcover/eds_tree.hpp"
#include "gcover/errors.hpp"
#include "gcover/generators.hpp"
#include "gcover/instance_io.hpp"
#include "gcover/lp.hpp"
#include "gcover/multicut_tree.hpp"
#include "gcover/oracle.hpp"
#include "gcover/reductions.hpp"
#include "gcover/relaxation.hpp"

namespace gcover {

namespace {

namespace fs = std::filesystem;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

// OPT / LP, "inf" when only the LP is zero, "-" when both are.
std::string ratio_text(const ExtRat& num, const Rational& den) {
  if (sgn(den) == 0) {
    return num == ExtRat(0) ? "-" : "inf";
  }
  if (num.is_infinite()) return "inf";
  return to_string(Rational(num.finite() / den));
}

Rational lp_value(const lp::LpModel& model) {
  const lp::LpResult res = lp::simplex_solve(model);
  GCOVER_CHECK(res.status == lp::LpStatus::kOptimal,
               std::string("relaxation ") + to_string(res.status));
  return res.value;
}

Rational relaxation_value(const Instance& inst, RelaxationKind kind) {
  if (const auto* eds = std::get_if<EdsInstance>(&inst)) {
    return lp_value(build_relaxation(*eds, kind).model);
  }
  if (const auto* mc = std::get_if<MulticutInstance>(&inst)) {
    return lp_value(build_relaxation(*mc, kind).model);
  }
  throw UsageError("relaxations are defined for eds and multicut instances");
}

Solution oracle_solution(const Instance& inst) {
  if (const auto* eds = std::get_if<EdsInstance>(&inst)) {
    return brute_force_eds(*eds);
  }
  if (const auto* mc = std::get_if<MulticutInstance>(&inst)) {
    return brute_force_multicut(*mc);
  }
  throw UsageError("no edge-set oracle for this problem");
}

ExtRat oracle_value(const Instance& inst) {
  if (const auto* sc = std::get_if<SetCoverInstance>(&inst)) {
    return brute_force_cover(*sc);
  }
  if (const auto* fl = std::get_if<FacilityLocationInstance>(&inst)) {
    return brute_force_facility_location(*fl);
  }
  return oracle_solution(inst).total;
}

// Solver output common to every problem kind.
struct Solved {
  Solution solution;
  std::string bound_name;  // "sum_xi" or "lower_bound"
  Rational bound;
  std::string certificate;
  bool checks_ok = true;
  std::string failed_check;
};

Solved solve_instance(const Instance& inst) {
  Solved s;
  switch (kind_of(inst)) {
    case ProblemKind::kEdsTree: {
      const auto& eds = std::get<EdsInstance>(inst);
      const EdsTreeResult r = solve_eds_tree(eds);
      s.solution = r.solution;
      s.bound_name = "sum_xi";
      for (const Rational& x : r.xi) s.bound += x;
      s.certificate = certificate_json(eds, r);
      break;
    }
    case ProblemKind::kMulticutTree: {
      const auto& mc = std::get<MulticutInstance>(inst);
      const MulticutResult r = solve_multicut_tree(mc);
      s.solution = r.solution;
      s.bound_name = "sum_xi";
      s.bound = r.dual.sum();
      s.certificate = certificate_json(mc, r);
      break;
    }
    case ProblemKind::kEdsGeneral: {
      const auto& eds = std::get<EdsInstance>(inst);
      const EdsGeneralResult r = solve_eds_general(eds);
      s.solution = r.solution;
      s.bound_name = "lower_bound";
      s.bound = r.lp.value;
      s.certificate = certificate_json(eds, r);
      for (const Check& c : r.bounds.checks) {
        if (!c.passed && s.checks_ok) {
          s.checks_ok = false;
          s.failed_check = c.name + ": " + c.detail;
        }
      }
      break;
    }
    default:
      throw UsageError(std::string("solve does not handle ") +
                       to_string(kind_of(inst)) +
                       "; reduce it with the library first");
  }
  return s;
}

void print_report(const VerificationReport& rep, std::ostream& out) {
  for (const Check& c : rep.checks) {
    out << (c.passed ? "pass " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << '\n';
  }
}

int cmd_solve(const std::string& file, const std::string& cert_path,
              std::ostream& out) {
  const Instance inst = parse_instance(read_text(file));
  const Solved s = solve_instance(inst);
  out << "problem\t" << to_string(kind_of(inst)) << '\n'
      << "edges\t" << join(s.solution.edges) << '\n'
      << "edge_weight\t" << to_string(s.solution.edge_weight) << '\n'
      << "node_weight\t" << to_string(s.solution.node_weight) << '\n'
      << "penalty\t" << to_string(s.solution.penalty) << '\n'
      << "objective\t" << to_string(s.solution.total) << '\n'
      << s.bound_name << '\t' << to_string(s.bound) << '\n'
      << "ratio\t" << ratio_text(s.solution.total, s.bound) << '\n';
  if (!cert_path.empty()) write_text(cert_path, s.certificate);
  if (!s.checks_ok) {
    out << "FAIL " << s.failed_check << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

int cmd_oracle(const std::string& file, std::ostream& out) {
  const Instance inst = parse_instance(read_text(file));
  const ProblemKind kind = kind_of(inst);
  out << "problem\t" << to_string(kind) << '\n';
  if (kind == ProblemKind::kSetCover || kind == ProblemKind::kFacilityLocation) {
    out << "optimum\t" << to_string(oracle_value(inst)) << '\n';
    return kExitOk;
  }
  const Solution sol = oracle_solution(inst);
  out << "edges\t" << join(sol.edges) << '\n'
      << "optimum\t" << to_string(sol.total) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& cert,
               std::ostream& out) {
  const Instance inst = parse_instance(read_text(file));
  const VerificationReport rep = verify_certificate(inst, read_text(cert));
  print_report(rep, out);
  return rep.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_gap(const std::string& file, const std::string& relaxation,
            std::ostream& out) {
  const Instance inst = parse_instance(read_text(file));
  const RelaxationKind kind = parse_relaxation_kind(relaxation);
  if (kind == RelaxationKind::kEdgeCover) {
    throw UsageError("gap takes natural or strengthened");
  }
  const Rational lp = relaxation_value(inst, kind);
  const ExtRat opt = oracle_solution(inst).total;
  out << "LP=" << to_string(lp) << '\n'
      << "OPT=" << to_string(opt) << '\n'
      << "gap=" << ratio_text(opt, lp) << '\n';
  return kExitOk;
}

// One line of the batch table.
struct BatchRow {
  std::string name;
  std::string problem;
  std::string natural = "-";
  std::string strengthened = "-";
  std::string objective = "-";
  std::string oracle = "-";
  std::string ratio = "-";
  bool pass = false;
  std::string certificate;
};

void fill_lp_columns(BatchRow& row, const Instance& inst) {
  row.natural = to_string(relaxation_value(inst, RelaxationKind::kNatural));
  row.strengthened =
      to_string(relaxation_value(inst, RelaxationKind::kStrengthened));
}

BatchRow process(const fs::path& path) {
  BatchRow row;
  row.name = path.filename().string();
  const Instance inst = parse_instance(read_text(path.string()));
  const ProblemKind kind = kind_of(inst);
  row.problem = to_string(kind);

  if (kind == ProblemKind::kSetCover || kind == ProblemKind::kFacilityLocation) {
    // Solved through the bipartite EDS encoding.
    const EdsReduction red =
        kind == ProblemKind::kSetCover
            ? reduce_to_eds(std::get<SetCoverInstance>(inst))
            : reduce_to_eds(std::get<FacilityLocationInstance>(inst));
    const Instance eds = red.eds;
    fill_lp_columns(row, eds);
    const EdsGeneralResult r = solve_eds_general(red.eds);
    const ExtRat opt = oracle_value(inst);
    row.objective = to_string(r.solution.total);
    row.oracle = to_string(opt);
    bool pass = r.bounds.ok();
    if (red.eds.graph.num_edges() <= kDefaultOracleCap) {
      const ExtRat eds_opt = brute_force_eds(red.eds).total;
      pass = pass && (opt.is_finite() ? eds_opt == opt
                                      : red.big_m_dominated(eds_opt));
    }
    if (opt.is_finite()) {
      row.ratio = ratio_text(r.solution.total, opt.finite());
      pass = pass && r.solution.total <= ExtRat(r.factor * opt.finite());
    }
    row.pass = pass;
    row.certificate = certificate_json(red.eds, r);
    return row;
  }

  fill_lp_columns(row, inst);
  const Solved s = solve_instance(inst);
  row.certificate = s.certificate;
  row.objective = to_string(s.solution.total);
  bool pass = s.checks_ok && verify_certificate(inst, s.certificate).ok();
  std::size_t m = 0;
  if (const auto* eds = std::get_if<EdsInstance>(&inst)) {
    m = eds->graph.num_edges();
  } else {
    m = std::get<MulticutInstance>(inst).graph.num_edges();
  }
  if (static_cast<int>(m) <= kDefaultOracleCap) {
    const ExtRat opt = oracle_solution(inst).total;
    row.oracle = to_string(opt);
    if (opt.is_finite()) row.ratio = ratio_text(s.solution.total, opt.finite());
    const ExtRat obj = s.solution.total;
    if (kind == ProblemKind::kEdsTree) {
      pass = pass && obj == opt;
    } else if (opt.is_finite()) {
      Rational factor = 2;
      if (kind == ProblemKind::kEdsGeneral) {
        factor = 4 * harmonic(std::get<EdsInstance>(inst).graph.num_nodes());
      }
      pass = pass && opt <= obj && obj <= ExtRat(factor * opt.finite());
    }
    pass = pass && ExtRat(s.bound) <= opt;
  }
  row.pass = pass;
  return row;
}

int cmd_batch(const std::string& dir, const std::string& report,
              const std::string& cert_dir, std::ostream& out) {
  if (!fs::is_directory(dir)) throw UsageError(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  if (!cert_dir.empty()) fs::create_directories(cert_dir);

  std::ostringstream table;
  table << "instance\tproblem\tnatural_lp\tstrengthened_lp\tobjective\t"
           "oracle\tratio\tpass\n";
  bool all = true;
  for (const fs::path& f : files) {
    BatchRow row;
    try {
      row = process(f);
    } catch (const ParseError& ex) {
      row.name = f.filename().string();
      row.problem = "unparsed";
      out << row.name << ": " << ex.what() << '\n';
    }
    all = all && row.pass;
    table << row.name << '\t' << row.problem << '\t' << row.natural << '\t'
          << row.strengthened << '\t' << row.objective << '\t' << row.oracle
          << '\t' << row.ratio << '\t' << (row.pass ? "pass" : "FAIL") << '\n';
    if (!cert_dir.empty() && !row.certificate.empty()) {
      write_text((fs::path(cert_dir) / (row.name + ".cert.json")).string(),
                 row.certificate);
    }
  }
  write_text(report, table.str());
  out << files.size() << " instances, " << (all ? "all pass" : "failures")
      << '\n';
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Graph covering solvers with exact dual certificates"};
  app.require_subcommand(1);

  std::string file, cert, relaxation, kind, output, dir, report, cert_dir;
  std::uint64_t seed = 0;
  GenParams params;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--certificate", cert, "write the certificate here");

  auto* oracle = app.add_subcommand("oracle", "brute-force optimum");
  oracle->add_option("file", file, "instance file")->required();

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("certificate", cert, "certificate file")->required();

  auto* gap = app.add_subcommand("gap", "relaxation value against optimum");
  gap->add_option("file", file, "instance file")->required();
  gap->add_option("--relaxation", relaxation, "natural or strengthened")
      ->required()
      ->check(CLI::IsMember({"natural", "strengthened"}));

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("kind", kind, "generator kind")
      ->required()
      ->check(CLI::IsMember(generator_kinds()));
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("-o,--output", output, "output file")->required();
  gen->add_option("--nodes", params.nodes, "nodes, leaves or ground set size");
  gen->add_option("--edges", params.edges, "edges of random graphs");
  gen->add_option("--demands", params.demands, "multicut demands");
  gen->add_option("--sets", params.sets, "set-cover sets");
  gen->add_option("--facilities", params.facilities, "facilities");
  gen->add_option("--weight-lo", params.weight_lo, "lowest weight");
  gen->add_option("--weight-hi", params.weight_hi, "highest weight");
  gen->add_option("--penalty-lo", params.penalty_lo, "lowest penalty");
  gen->add_option("--penalty-hi", params.penalty_hi, "highest penalty");
  gen->add_option("--inf-num", params.inf_num, "numerator of P(penalty = inf)");
  gen->add_option("--inf-den", params.inf_den, "denominator of P(penalty = inf)");

  auto* batch = app.add_subcommand("batch", "solve, check and tabulate a directory");
  batch->add_option("dir", dir, "directory of instance files")->required();
  batch->add_option("--report", report, "TSV report path")->required();
  batch->add_option("--certificates", cert_dir, "directory for certificates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(file, cert, out);
    if (*oracle) return cmd_oracle(file, out);
    if (*verify) return cmd_verify(file, cert, out);
    if (*gap) return cmd_gap(file, relaxation, out);
    if (*gen) {
      write_instance_file(output, gen_instance(kind, params, seed));
      return kExitOk;
    }
    if (*batch) return cmd_batch(dir, report, cert_dir, out);
  } catch (const InternalError& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitInternal;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gcover
