#include "kks/json_io.hpp"

namespace kks {

using nlohmann::json;

json to_json(const AffinePermutation& w) { return {{"k", w.k()}, {"window", w.window()}}; }

json members_json(const IndexSet& a) { return json(a.members()); }

json to_json(const IndexSet& a) { return {{"k", a.k()}, {"set", a.members()}}; }

json to_json(const KBoundedPartition& lambda) {
  return {{"k", lambda.k()}, {"kind", "bounded"}, {"parts", lambda.parts()}};
}

json to_json(const CorePartition& core) {
  return {{"k", core.k()}, {"kind", "core"}, {"parts", core.parts()}};
}

json to_json(const KCode& code) { return {{"k", code.k()}, {"values", code.values()}}; }

json to_json(const WeakStrip& strip) {
  return {{"base", to_json(strip.base)}, {"A", members_json(strip.indices)}, {"top", to_json(strip.top)}};
}

namespace {

json terms_json(const std::map<KBoundedPartition, BigInt>& terms) {
  auto arr = json::array();
  for (const auto& [lambda, c] : terms) {
    arr.push_back({{"parts", lambda.parts()}, {"coeff", c.str()}});
  }
  return arr;
}

json set_list(const std::vector<IndexSet>& sets) {
  auto arr = json::array();
  for (const auto& a : sets) arr.push_back(members_json(a));
  return arr;
}

}  // namespace

json to_json(const SymElt& f) {
  return {{"k", f.k()}, {"basis", basis_name(f.basis())}, {"terms", terms_json(f.terms())}};
}

json to_json(const StrongSumCombination& f) {
  return {{"k", f.k}, {"basis", "gtilde"}, {"terms", terms_json(f.terms)}};
}

json to_json(const ZSets& z) {
  return {{"u", to_json(z.u)},
          {"plus", set_list(z.plus)},
          {"minus", set_list(z.minus)},
          {"plus_grassmannian", set_list(z.plus_grassmannian)}};
}

json to_json(const Fiber& f) {
  return {{"A", members_json(f.a)}, {"u", to_json(f.u)}, {"members", set_list(f.members)}};
}

}  // namespace kks
