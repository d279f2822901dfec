#include "oracle.hpp"

#include <algorithm>
#include <string>

namespace oracle {

using mereology::Behavior;
using mereology::Bitset;

namespace {

std::size_t behaviors(const Part& p) { return p.system().size(); }

std::vector<std::size_t> canonical(const std::vector<std::size_t>& labels) {
  std::vector<std::size_t> out(labels.size());
  std::vector<std::size_t> seen;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    std::size_t k = 0;
    while (k < seen.size() && seen[k] != labels[s]) ++k;
    if (k == seen.size()) seen.push_back(labels[s]);
    out[s] = k;
  }
  return out;
}

Part part_from_map(const Part& like, const std::string& name, const std::vector<std::size_t>& map) {
  std::size_t n = 0;
  for (std::size_t c : map) n = std::max(n, c + 1);
  std::vector<Behavior> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(Behavior::token(name + std::to_string(i)));
  return Part(like.system_ptr(), name, labels, map);
}

}  // namespace

bool compatible(const Part& p, std::size_t a, const Part& q, std::size_t b) {
  for (std::size_t s = 0; s < behaviors(p); ++s) {
    if (p.map()[s] == a && q.map()[s] == b) return true;
  }
  return false;
}

bool determines(const Part& p, std::size_t a, const Part& q, std::size_t b) {
  for (std::size_t s = 0; s < behaviors(p); ++s) {
    if (p.map()[s] == a && q.map()[s] != b) return false;
  }
  return true;
}

bool part_of(const Part& q, const Part& p) {
  for (std::size_t s = 0; s < behaviors(p); ++s) {
    for (std::size_t t = 0; t < behaviors(p); ++t) {
      if (p.map()[s] == p.map()[t] && q.map()[s] != q.map()[t]) return false;
    }
  }
  return true;
}

Constraint allows(const Part& p, const Part& q, const Constraint& phi) {
  Bitset out(q.size());
  for (std::size_t b = 0; b < q.size(); ++b) {
    bool any = false;
    for (std::size_t s = 0; s < behaviors(p); ++s) any = any || (q.map()[s] == b && phi[p.map()[s]]);
    out.set(b, any);
  }
  return Constraint(q.codomain_ptr(), out);
}

Constraint ensures(const Part& p, const Part& q, const Constraint& phi) {
  Bitset out(q.size());
  for (std::size_t b = 0; b < q.size(); ++b) {
    bool all = true;
    for (std::size_t s = 0; s < behaviors(p); ++s) all = all && (q.map()[s] != b || phi[p.map()[s]]);
    out.set(b, all);
  }
  return Constraint(q.codomain_ptr(), out);
}

Constraint exists_along(const Part& p, const Part& q, const Constraint& phi) {
  Bitset out(q.size());
  for (std::size_t s = 0; s < behaviors(p); ++s) {
    if (phi[p.map()[s]]) out.set(q.map()[s], true);
  }
  return Constraint(q.codomain_ptr(), out);
}

Constraint forall_along(const Part& p, const Part& q, const Constraint& phi) {
  Bitset out(q.size());
  for (std::size_t b = 0; b < q.size(); ++b) out.set(b, true);
  for (std::size_t s = 0; s < behaviors(p); ++s) {
    if (!phi[p.map()[s]]) out.set(q.map()[s], false);
  }
  return Constraint(q.codomain_ptr(), out);
}

Constraint pullback_along(const Part& p, const Part& q, const Constraint& psi) {
  Bitset out(p.size());
  for (std::size_t s = 0; s < behaviors(p); ++s) {
    if (psi[q.map()[s]]) out.set(p.map()[s], true);
  }
  return Constraint(p.codomain_ptr(), out);
}

std::vector<std::size_t> meet_map(const Part& p, const Part& q) {
  const std::size_t n = behaviors(p);
  // related[s][t]: s and t are glued. Start from the two kernels, then close.
  std::vector<std::vector<bool>> related(n, std::vector<bool>(n));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) related[s][t] = p.map()[s] == p.map()[t] || q.map()[s] == q.map()[t];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if (related[s][k] && related[k][t]) related[s][t] = true;
      }
    }
  }
  std::vector<std::size_t> first(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t t = 0;
    while (!related[s][t]) ++t;
    first[s] = t;
  }
  return canonical(first);
}

std::vector<std::size_t> join_map(const Part& p, const Part& q) {
  std::vector<std::size_t> pairs;
  for (std::size_t s = 0; s < behaviors(p); ++s) pairs.push_back(p.map()[s] * q.size() + q.map()[s]);
  return canonical(pairs);
}

Part meet(const Part& p, const Part& q) { return part_from_map(p, "meet", meet_map(p, q)); }

Part join(const Part& p, const Part& q) { return part_from_map(p, "join", join_map(p, q)); }

bool strongly_disjoint(const Part& p, const Part& q) {
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < q.size(); ++b) {
      if (!compatible(p, a, q, b)) return false;
    }
  }
  return true;
}

Bitset diamond(const std::vector<Bitset>& relation, const Bitset& phi) {
  Bitset out(phi.size());
  for (std::size_t w = 0; w < phi.size(); ++w) {
    for (std::size_t v = 0; v < phi.size(); ++v) {
      if (relation[w][v] && phi[v]) out.set(w, true);
    }
  }
  return out;
}

Bitset box(const std::vector<Bitset>& relation, const Bitset& phi) {
  Bitset out(phi.size());
  for (std::size_t w = 0; w < phi.size(); ++w) {
    bool all = true;
    for (std::size_t v = 0; v < phi.size(); ++v) all = all && (!relation[w][v] || phi[v]);
    out.set(w, all);
  }
  return out;
}

}  // namespace oracle
