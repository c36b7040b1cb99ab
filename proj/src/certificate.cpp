#include "gcover/certificate.hpp"

#include <algorithm>

#include "gcover/errors.hpp"
#include "json.hpp"

namespace gcover {

namespace {

using nlohmann::json;

json edge_list(const std::vector<int>& edges) {
  json a = json::array();
  for (int e : edges) a.push_back(e);
  return a;
}

json base_document(const char* problem, const Solution& sol) {
  json doc;
  doc["problem"] = problem;
  doc["edges"] = edge_list(sol.edges);
  doc["objective"] = to_string(sol.total);
  return doc;
}

std::vector<int> read_ints(const json& doc, const char* key) {
  std::vector<int> out;
  for (const json& v : doc.at(key)) out.push_back(v.get<int>());
  return out;
}

Rational read_rational(const json& v) {
  return parse_rational(v.get<std::string>());
}

// Certificate edges must be the solver's edge set, and the stated
// objective must match a fresh evaluation.
void add_objective_check(VerificationReport& rep, const Solution& sol,
                         const json& doc) {
  const ExtRat stated = parse_ext_rational(doc.at("objective").get<std::string>());
  rep.add("objective-matches", sol.total == stated,
          "stated " + to_string(stated) + ", evaluated " + to_string(sol.total));
}

VerificationReport verify_eds_tree_doc(const EdsInstance& inst, const json& doc) {
  const std::vector<int> edges = read_ints(doc, "edges");
  std::vector<Rational> xi(inst.graph.num_edges(), Rational(0));
  for (const json& entry : doc.at("xi")) {
    const int e = entry.at("edge").get<int>();
    if (e < 0 || e >= inst.graph.num_edges()) {
      throw ParseError(0, "certificate names edge " + std::to_string(e));
    }
    xi[e] = read_rational(entry.at("value"));
  }
  VerificationReport rep = verify_eds_optimality(inst, edges, xi);
  add_objective_check(rep, evaluate_eds(inst, edges), doc);
  return rep;
}

VerificationReport verify_multicut_doc(const MulticutInstance& inst,
                                       const json& doc) {
  const std::vector<int> reduced = read_ints(doc, "reduced_edges");
  MulticutDual dual;
  for (const json& entry : doc.at("xi")) {
    const int i = entry.at("demand").get<int>();
    if (i < 0 || i >= static_cast<int>(inst.demands.size())) {
      throw ParseError(0, "certificate names demand " + std::to_string(i));
    }
    if (static_cast<int>(dual.xi.size()) <= i) dual.xi.resize(i + 1);
    dual.xi[i] = read_rational(entry.at("value"));
  }
  dual.xi.resize(inst.demands.size());
  for (const json& entry : doc.at("nu")) {
    dual.nu[{entry.at("edge").get<int>(), entry.at("demand").get<int>()}] =
        read_rational(entry.at("value"));
  }
  for (const json& entry : doc.at("mu")) {
    dual.mu[{entry.at("node").get<int>(), entry.at("demand").get<int>()}] =
        read_rational(entry.at("value"));
  }
  VerificationReport rep = verify_multicut(inst, reduced, dual);

  std::vector<int> original;
  for (int e : reduced) {
    if (e < inst.graph.num_edges()) original.push_back(e);
  }
  std::sort(original.begin(), original.end());
  const std::vector<int> edges = read_ints(doc, "edges");
  rep.add("edges-match-cut", edges == original,
          "edges differ from the original edges of the reduced cut");
  const Solution sol = evaluate_multicut(inst, edges);
  add_objective_check(rep, sol, doc);
  rep.add("objective-within-twice-dual",
          sol.total <= ExtRat(2 * dual.sum()),
          "objective " + to_string(sol.total) + " exceeds 2 * " +
              to_string(dual.sum()));
  return rep;
}

VerificationReport verify_eds_general_doc(const EdsInstance& inst,
                                          const json& doc) {
  const std::vector<int> edges = read_ints(doc, "edges");
  VerificationReport rep =
      verify_eds_general(inst, edges, read_rational(doc.at("lower_bound")));
  add_objective_check(rep, evaluate_eds(inst, edges), doc);
  return rep;
}

}  // namespace

std::string certificate_json(const EdsInstance&, const EdsTreeResult& r) {
  json doc = base_document("eds-tree", r.solution);
  json xi = json::array();
  for (std::size_t e = 0; e < r.xi.size(); ++e) {
    if (sgn(r.xi[e]) != 0) {
      xi.push_back({{"edge", e}, {"value", to_string(r.xi[e])}});
    }
  }
  doc["xi"] = std::move(xi);
  return doc.dump(2) + "\n";
}

std::string certificate_json(const MulticutInstance&, const MulticutResult& r) {
  json doc = base_document("multicut-tree", r.solution);
  doc["reduced_edges"] = edge_list(r.reduced_edges);
  json xi = json::array();
  for (std::size_t i = 0; i < r.dual.xi.size(); ++i) {
    xi.push_back({{"demand", i}, {"value", to_string(r.dual.xi[i])}});
  }
  doc["xi"] = std::move(xi);
  json nu = json::array();
  for (const auto& [key, v] : r.dual.nu) {
    if (sgn(v) != 0) {
      nu.push_back({{"edge", key.first}, {"demand", key.second},
                    {"value", to_string(v)}});
    }
  }
  doc["nu"] = std::move(nu);
  json mu = json::array();
  for (const auto& [key, v] : r.dual.mu) {
    if (sgn(v) != 0) {
      mu.push_back({{"node", key.first}, {"demand", key.second},
                    {"value", to_string(v)}});
    }
  }
  doc["mu"] = std::move(mu);
  doc["witness"] = edge_list(r.witness);
  doc["processed"] = edge_list(r.processed);
  return doc.dump(2) + "\n";
}

std::string certificate_json(const EdsInstance&, const EdsGeneralResult& r) {
  json doc = base_document("eds-general", r.solution);
  doc["lower_bound"] = to_string(r.lp.value);
  doc["factor"] = to_string(r.factor);
  json u = json::array();
  for (int v : r.demand_nodes) u.push_back(v);
  doc["demand_nodes"] = std::move(u);
  return doc.dump(2) + "\n";
}

VerificationReport verify_certificate(const Instance& inst,
                                      const std::string& certificate) {
  json doc;
  try {
    doc = json::parse(certificate);
  } catch (const json::exception& ex) {
    throw ParseError(0, std::string("certificate: ") + ex.what());
  }
  try {
    const std::string problem = doc.at("problem").get<std::string>();
    const ProblemKind kind = kind_of(inst);
    if (problem != to_string(kind)) {
      throw ParseError(0, "certificate is for " + problem + ", instance is " +
                              to_string(kind));
    }
    switch (kind) {
      case ProblemKind::kEdsTree:
        return verify_eds_tree_doc(std::get<EdsInstance>(inst), doc);
      case ProblemKind::kMulticutTree:
        return verify_multicut_doc(std::get<MulticutInstance>(inst), doc);
      case ProblemKind::kEdsGeneral:
        return verify_eds_general_doc(std::get<EdsInstance>(inst), doc);
      default:
        throw UsageError(std::string("no certificate format for ") +
                         to_string(kind));
    }
  } catch (const json::exception& ex) {
    throw ParseError(0, std::string("certificate: ") + ex.what());
  }
}

}  // namespace gcover
