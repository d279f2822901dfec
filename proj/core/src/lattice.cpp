#include "mereology/lattice.hpp"

#include <numeric>
#include <unordered_map>

#include "mereology/relations.hpp"

namespace mereology {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Part meet(const Part& p, const Part& q) {
  require_same_system(p, q);
  const std::size_t np = p.size();
  UnionFind classes(np + q.size());
  for (std::size_t s = 0; s < p.system().size(); ++s) classes.unite(p.restrict(s), np + q.restrict(s));

  std::unordered_map<std::size_t, std::size_t> class_index;
  std::vector<Behavior::Tuple> members;
  for (std::size_t a = 0; a < np; ++a) {
    auto [it, inserted] = class_index.try_emplace(classes.find(a), members.size());
    if (inserted) members.emplace_back();
    members[it->second].push_back(p.codomain()[a]);
  }
  std::vector<Behavior> labels;
  labels.reserve(members.size());
  for (auto& m : members) labels.push_back(Behavior::tuple(std::move(m)));

  std::vector<std::size_t> map(p.system().size());
  for (std::size_t s = 0; s < map.size(); ++s) map[s] = class_index.at(classes.find(p.restrict(s)));
  return Part(p.system_ptr(), "meet(" + p.name() + "," + q.name() + ")", std::move(labels), std::move(map));
}

Part join(const Part& p, const Part& q) {
  require_same_system(p, q);
  std::unordered_map<std::size_t, std::size_t> pair_index;
  std::vector<Behavior> labels;
  std::vector<std::size_t> map(p.system().size());
  for (std::size_t s = 0; s < map.size(); ++s) {
    const std::size_t a = p.restrict(s);
    const std::size_t b = q.restrict(s);
    auto [it, inserted] = pair_index.try_emplace(a * q.size() + b, labels.size());
    if (inserted) labels.push_back(Behavior::tuple({p.codomain()[a], q.codomain()[b]}));
    map[s] = it->second;
  }
  return Part(p.system_ptr(), "join(" + p.name() + "," + q.name() + ")", std::move(labels), std::move(map));
}

bool strongly_disjoint(const Part& p, const Part& q) {
  const CompatibilityMatrix c(p, q);
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (!c.row(a).all()) return false;
  }
  return true;
}

bool disjoint(const Part& p, const Part& q) { return meet(p, q).size() == 1; }

}  // namespace mereology
