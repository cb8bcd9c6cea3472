#include "binrep/decompose.hpp"

#include <stdexcept>

namespace binrep {

LeadingTerm greedy_leading_term(WideInt n, unsigned k) {
  if (k < 1) throw InputError("greedy_leading_term: order k must be >= 1");
  if (n < WideInt(1u)) throw InputError("greedy_leading_term: target must be >= 1");
  const Index n1 = floor_index(k, n);
  const WideInt rem = n - binom(n1, k);
  if (rem >= gap(k, n1)) throw std::logic_error("greedy_leading_term: remainder not below the gap");
  return {n1, rem};
}

std::optional<std::vector<Index>> two_triangular(WideInt r, SearchMode mode) {
  if (r == WideInt{}) return std::vector<Index>{};
  const Index top = floor_index(2, r);
  for (Index a = top; a >= 2; --a) {
    const WideInt ta = binom(a, 2);
    if (ta + ta < r) break;  // b <= a, so both terms are at most ta
    const WideInt rest = r - ta;
    if (rest == WideInt{}) return std::vector<Index>{a};
    if (auto b = sequence_index_of(2, rest)) {
      if (*b < a || (*b == a && mode == SearchMode::RepeatsAllowed)) return std::vector<Index>{a, *b};
    }
  }
  return std::nullopt;
}

std::optional<Representation> decompose_k2(WideInt n, SearchMode mode) {
  const LeadingTerm lead = greedy_leading_term(n, 2);
  if (auto rest = two_triangular(lead.remainder, mode)) {
    std::vector<Index> idx{lead.index};
    idx.insert(idx.end(), rest->begin(), rest->end());
    Representation rep(n, 2, std::move(idx));
    // Only n = 2 (1 + 1) can repeat the leading index.
    if (mode == SearchMode::RepeatsAllowed || rep.distinct()) return rep;
  }
  auto r = RepSearcher(2, n).min_rep(n, 3, mode);
  return r.witness;
}

std::optional<Representation> greedy_chain(WideInt n, unsigned k, unsigned max_terms) {
  std::vector<Index> idx;
  WideInt rem = n;
  while (rem != WideInt{}) {
    if (idx.size() == max_terms) return std::nullopt;
    const LeadingTerm lead = greedy_leading_term(rem, k);
    idx.push_back(lead.index);
    rem = lead.remainder;
  }
  return Representation(n, k, std::move(idx));
}

WideInt evaluate_signed(const std::vector<SignedTerm>& terms, unsigned order) {
  WideInt pos;
  WideInt neg;
  for (const auto& t : terms) {
    (t.sign > 0 ? pos : neg) += binom(t.index, order);
  }
  return pos - neg;
}

std::optional<K3Decomposition> decompose_k3_telescoping(WideInt n) {
  const LeadingTerm lead = greedy_leading_term(n, 3);

  std::optional<Representation> triangles =
      lead.remainder == WideInt{} ? Representation(WideInt{}, 2, {}) : decompose_k2(lead.remainder, SearchMode::RepeatsAllowed);
  if (!triangles) throw std::logic_error("decompose_k3_telescoping: remainder has no triangular decomposition");

  // T_m = C(m, 2) = C(m+1, 3) - C(m, 3)
  std::vector<SignedTerm> telescoped{{lead.index, +1}};
  for (Index m : triangles->indices()) {
    telescoped.push_back({m + 1, +1});
    telescoped.push_back({m, -1});
  }
  if (evaluate_signed(telescoped, 3) != n) throw std::logic_error("decompose_k3_telescoping: telescoped sum mismatch");

  bool fallback = false;
  std::optional<Representation> rep = greedy_chain(n, 3, kTelescopingTermCap);
  if (!rep) {
    fallback = true;
    rep = RepSearcher(3, n).min_rep(n, kTelescopingTermCap, SearchMode::RepeatsAllowed).witness;
    if (!rep) return std::nullopt;
  }
  return K3Decomposition{std::move(*rep), std::move(*triangles), std::move(telescoped), fallback};
}

}  // namespace binrep
