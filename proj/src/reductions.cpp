#include "gcover/reductions.hpp"

namespace gcover {

FacilityLocationInstance as_facility_location(const SetCoverInstance& sc) {
  validate(sc);
  FacilityLocationInstance fl;
  fl.connection.assign(sc.ground_size, std::vector<ExtRat>(
                                           sc.sets.size(), ExtRat::infinity()));
  for (std::size_t f = 0; f < sc.sets.size(); ++f) {
    fl.opening.push_back(sc.sets[f].cost);
    for (int v : sc.sets[f].members) fl.connection[v][f] = ExtRat(0);
  }
  return fl;
}

EdsReduction reduce_to_eds(const FacilityLocationInstance& fl) {
  validate(fl);
  const int nc = fl.num_clients();
  const int nf = fl.num_facilities();
  EdsReduction out;
  out.num_clients = nc;
  out.num_facilities = nf;
  out.big_m = 1;
  for (const Rational& o : fl.opening) out.big_m += o;
  for (const auto& row : fl.connection) {
    for (const ExtRat& d : row) {
      if (d.is_finite()) out.big_m += d.finite();
    }
  }

  std::vector<Edge> edges;
  std::vector<Rational> ew;
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f) {
      edges.push_back({c, nc + f});
      const ExtRat& d = fl.connection[c][f];
      ew.push_back(d.is_finite() ? d.finite() : out.big_m);
    }
  }
  for (int c = 0; c < nc; ++c) {
    edges.push_back({c, nc + nf + c});
    ew.push_back(0);
  }
  const int n = 2 * nc + nf;
  EdsInstance& eds = out.eds;
  eds.graph = Graph(n, std::move(edges));
  eds.node_weight.assign(n, Rational(0));
  for (int f = 0; f < nf; ++f) eds.node_weight[nc + f] = fl.opening[f];
  for (int c = 0; c < nc; ++c) eds.node_weight[nc + nf + c] = out.big_m;
  eds.edge_weight = std::move(ew);
  eds.penalty.assign(eds.edge_weight.size(), ExtRat::infinity());
  return out;
}

EdsReduction reduce_to_eds(const SetCoverInstance& sc) {
  return reduce_to_eds(as_facility_location(sc));
}

}  // namespace gcover
