#include "optirl/visit_index.hpp"

#include "optirl/common.hpp"

namespace optirl {

namespace {

std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a;
}

}  // namespace

int VisitIndex::add_state(const StatePoint& s) {
  const std::uint64_t key = s.hash_key();
  auto& bucket = state_buckets_[key];
  for (int k : bucket)
    if (states_[k] == s) return k;
  const int k = static_cast<int>(states_.size());
  states_.push_back(s);
  pairs_of_state_.emplace_back();
  bucket.push_back(k);
  return k;
}

int VisitIndex::add_pair(const StatePoint& s, int option) {
  const std::uint64_t key = combine(s.hash_key(), static_cast<std::uint64_t>(option));
  auto& bucket = pair_buckets_[key];
  for (int l : bucket)
    if (pairs_[l].option == option && pairs_[l].s == s) return l;
  const int l = static_cast<int>(pairs_.size());
  pairs_.push_back({s, option});
  triples_of_pair_.emplace_back();
  const int k = add_state(s);
  state_of_pair_.push_back(k);
  pairs_of_state_[k].push_back(l);
  bucket.push_back(l);
  return l;
}

int VisitIndex::add_triple(const StatePoint& s, int option, const ActionPoint& a) {
  const std::uint64_t key =
      combine(combine(s.hash_key(), static_cast<std::uint64_t>(option)), a.hash_key());
  auto& bucket = triple_buckets_[key];
  for (int m : bucket)
    if (triples_[m].option == option && triples_[m].s == s && triples_[m].a == a) return m;
  const int m = static_cast<int>(triples_.size());
  triples_.push_back({s, option, a});
  const int l = add_pair(s, option);
  pair_of_triple_.push_back(l);
  triples_of_pair_[l].push_back(m);
  bucket.push_back(m);
  return m;
}

void VisitIndex::resize_weights() {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(n_triples());
  mu.head(mu_.size()) = mu_;
  mu_ = std::move(mu);
  Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(n_pairs());
  mu1.head(mu1_.size()) = mu1_;
  mu1_ = std::move(mu1);
}

int VisitIndex::find_triple(const StatePoint& s, int option, const ActionPoint& a) const {
  const std::uint64_t key =
      combine(combine(s.hash_key(), static_cast<std::uint64_t>(option)), a.hash_key());
  auto it = triple_buckets_.find(key);
  if (it == triple_buckets_.end()) return -1;
  for (int m : it->second)
    if (triples_[m].option == option && triples_[m].s == s && triples_[m].a == a) return m;
  return -1;
}

int VisitIndex::find_pair(const StatePoint& s, int option) const {
  const std::uint64_t key = combine(s.hash_key(), static_cast<std::uint64_t>(option));
  auto it = pair_buckets_.find(key);
  if (it == pair_buckets_.end()) return -1;
  for (int l : it->second)
    if (pairs_[l].option == option && pairs_[l].s == s) return l;
  return -1;
}

VisitIndex build_visit_index(const std::vector<Trajectory>& demos, double gamma) {
  if (demos.empty()) throw DataError("build_visit_index: no demonstrations");
  VisitIndex vi;
  // first pass fixes the canonical first-visit ordering
  for (const auto& traj : demos)
    for (const auto& st : traj.steps) vi.add_triple(st.state, st.option, st.action);
  vi.resize_weights();
  const double inv_n = 1.0 / static_cast<double>(demos.size());
  for (const auto& traj : demos) {
    double w = 1.0;       // gamma^t
    double w_prev = 1.0;  // gamma^(t-1) for t >= 1
    for (size_t t = 0; t < traj.steps.size(); ++t) {
      const Step& st = traj.steps[t];
      const int m = vi.find_triple(st.state, st.option, st.action);
      vi.mutable_mu()[m] += inv_n * w;
      if (t >= 1) vi.mutable_mu1()[vi.pair_of_triple(m)] += inv_n * w_prev;
      w_prev = w;
      w *= gamma;
    }
  }
  return vi;
}

void scale_mu_by_policy(VisitIndex& vi, const OptionSet& opts) {
  for (int m = 0; m < vi.n_triples(); ++m) {
    const auto& tr = vi.triple(m);
    const double p = opts.options[tr.option].policy->prob(tr.s, tr.a);
    vi.mutable_mu()[m] *= p;
  }
}

}  // namespace optirl
