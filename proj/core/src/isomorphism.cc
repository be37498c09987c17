//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/isomorphism.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <utility>

namespace kaleido {

void Pattern::Connect(int i, int j) {
  if (Adjacent(i, j)) return;
  rows[i] |= static_cast<std::uint8_t>(1u << j);
  rows[j] |= static_cast<std::uint8_t>(1u << i);
  ++degrees[i];
  ++degrees[j];
}

void Pattern::Swap(int i, int j) {
  if (i == j) return;
  std::swap(labels[i], labels[j]);
  std::swap(degrees[i], degrees[j]);
  std::swap(rows[i], rows[j]);
  for (int t = 0; t < k; ++t) {
    const std::uint8_t bi = (rows[t] >> i) & 1u;
    const std::uint8_t bj = (rows[t] >> j) & 1u;
    if (bi != bj) rows[t] ^= static_cast<std::uint8_t>((1u << i) | (1u << j));
  }
}

std::uint32_t Pattern::AdjacencyBits() const {
  std::uint32_t bits = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (Adjacent(i, j)) bits |= 1u << PairBit(k, i, j);
    }
  }
  return bits;
}

int Pattern::EdgeCount() const {
  int twice = 0;
  for (int i = 0; i < k; ++i) twice += std::popcount(rows[i]);
  return twice / 2;
}

Pattern Pattern::FromBits(int k, std::span<const Label> labels, std::uint32_t bits) {
  Pattern p;
  p.k = k;
  for (int i = 0; i < k; ++i) p.labels[i] = labels[i];
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if ((bits >> PairBit(k, i, j)) & 1u) p.Connect(i, j);
    }
  }
  return p;
}

bool Pattern::operator==(const Pattern& other) const {
  if (k != other.k) return false;
  for (int i = 0; i < k; ++i) {
    if (labels[i] != other.labels[i] || degrees[i] != other.degrees[i] ||
        rows[i] != other.rows[i]) {
      return false;
    }
  }
  return true;
}

bool CharPoly::operator==(const CharPoly& other) const {
  if (k != other.k) return false;
  for (int i = 0; i < k; ++i) {
    if (coeffs[i] != other.coeffs[i]) return false;
  }
  return true;
}

Pattern InitPattern(const Graph& g, std::span<const VertexId> e, bool ignore_labels) {
  if (e.size() > static_cast<std::size_t>(kMaxPatternVertices)) {
    throw SizeLimitError("patterns are limited to " + std::to_string(kMaxPatternVertices) +
                         " vertices, got " + std::to_string(e.size()));
  }
  Pattern p;
  p.k = static_cast<int>(e.size());
  for (int i = 0; i < p.k; ++i) {
    p.labels[i] = ignore_labels ? 0 : g.label(e[i]);
    for (int j = 0; j < i; ++j) {
      if (g.CheckLink(e[j], e[i])) p.Connect(j, i);
    }
  }
  return p;
}

Pattern InitEdgePattern(const Graph& g, std::span<const EdgeId> edges,
                        std::vector<VertexId>* vertices, bool ignore_labels) {
  std::array<VertexId, kMaxPatternVertices> verts{};
  int n = 0;
  Pattern p;
  auto position = [&](VertexId v) {
    for (int i = 0; i < n; ++i) {
      if (verts[i] == v) return i;
    }
    if (n == kMaxPatternVertices) {
      throw SizeLimitError("edge-induced pattern exceeds " + std::to_string(kMaxPatternVertices) +
                           " vertices");
    }
    verts[n] = v;
    p.labels[n] = ignore_labels ? 0 : g.label(v);
    return n++;
  };
  for (EdgeId x : edges) {
    auto [u, v] = g.EdgeEndpoints(x);
    const int a = position(u);
    const int b = position(v);
    p.k = n;
    p.Connect(a, b);
  }
  p.k = n;
  if (vertices != nullptr) vertices->assign(verts.begin(), verts.begin() + n);
  return p;
}

void CanonicalSort(Pattern* p, std::span<VertexId> companion) {
  for (int i = 0; i < p->k; ++i) {
    for (int j = i + 1; j < p->k; ++j) {
      const bool swap = p->labels[i] > p->labels[j] ||
                        (p->labels[i] == p->labels[j] && p->degrees[i] > p->degrees[j]);
      if (swap) {
        p->Swap(i, j);
        if (!companion.empty()) std::swap(companion[i], companion[j]);
      }
    }
  }
}

std::int64_t EncodeWeight(Label a, Label b, Label max_label) {
  if (a > b) std::swap(a, b);
  const std::int64_t base = static_cast<std::int64_t>(max_label) + 2;
  return (static_cast<std::int64_t>(a) + 1) * base + (static_cast<std::int64_t>(b) + 1);
}

WeightMatrix WeightedAdjMatrix(const Pattern& p, Label max_label) {
  WeightMatrix w;
  w.k = p.k;
  for (int i = 0; i < p.k; ++i) {
    for (int j = i + 1; j < p.k; ++j) {
      if (p.Adjacent(i, j)) {
        const std::int64_t weight = EncodeWeight(p.labels[i], p.labels[j], max_label);
        w.m[i][j] = weight;
        w.m[j][i] = weight;
      }
    }
  }
  return w;
}

namespace {

Int128 Mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("characteristic polynomial overflow");
  return r;
}

Int128 Add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("characteristic polynomial overflow");
  return r;
}

using Mat = std::array<std::array<Int128, kMaxPatternVertices>, kMaxPatternVertices>;

}  // namespace

CharPoly CharPolynomial(const WeightMatrix& w) {
  const int k = w.k;
  CharPoly poly;
  poly.k = k;
  Mat m{};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = w.m[i][j];
  }
  Mat c = m;
  for (int i = 1; i <= k; ++i) {
    if (i > 1) {
      // C <- M (C + p I), p being the coefficient found in the last step.
      Mat shifted = c;
      for (int d = 0; d < k; ++d) shifted[d][d] = Add(shifted[d][d], poly.coeffs[i - 2]);
      Mat next{};
      for (int r = 0; r < k; ++r) {
        for (int s = 0; s < k; ++s) {
          Int128 acc = 0;
          for (int t = 0; t < k; ++t) {
            if (m[r][t] != 0) acc = Add(acc, Mul(m[r][t], shifted[t][s]));
          }
          next[r][s] = acc;
        }
      }
      c = next;
    }
    Int128 trace = 0;
    for (int d = 0; d < k; ++d) trace = Add(trace, c[d][d]);
    if (trace % i != 0) throw InvariantError("Faddeev-LeVerrier division is not exact");
    poly.coeffs[i - 1] = -(trace / i);
  }
  return poly;
}

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

struct Fnv {
  std::uint64_t h = kFnvOffset;
  void Byte(std::uint8_t b) {
    h ^= b;
    h *= kFnvPrime;
  }
  template <typename T>
  void Le(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      Byte(static_cast<std::uint8_t>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
    }
  }
};

}  // namespace

std::uint64_t TripleHash(const Pattern& p, const CharPoly& poly) {
  Fnv hl;
  hl.Byte('L');
  hl.Byte(static_cast<std::uint8_t>(p.k));
  for (int i = 0; i < p.k; ++i) hl.Le<std::uint32_t>(p.labels[i]);

  Fnv hd;
  hd.Byte('D');
  hd.Byte(static_cast<std::uint8_t>(p.k));
  for (int i = 0; i < p.k; ++i) hd.Le<std::uint8_t>(p.degrees[i]);

  Fnv hp;
  hp.Byte('P');
  hp.Byte(static_cast<std::uint8_t>(poly.k));
  for (int i = 0; i < poly.k; ++i) {
    const Int128 c = poly.coeffs[i];
    hp.Byte(c < 0 ? 1 : 0);
    auto mag = static_cast<unsigned __int128>(c < 0 ? -c : c);
    for (int b = 0; b < 16; ++b) hp.Byte(static_cast<std::uint8_t>((mag >> (8 * b)) & 0xff));
  }
  return hl.h ^ hd.h ^ hp.h;
}

PatternKey HashPattern(Pattern p, Label max_label, std::span<VertexId> companion) {
  CanonicalSort(&p, companion);
  PatternKey key;
  key.poly = CharPolynomial(WeightedAdjMatrix(p, max_label));
  key.hash = TripleHash(p, key.poly);
  key.pattern = p;
  return key;
}

PatternKey EigenHash(const Graph& g, std::span<const VertexId> e, bool ignore_labels) {
  return HashPattern(InitPattern(g, e, ignore_labels), ignore_labels ? 0 : g.max_label());
}

std::string SerializePattern(const Pattern& p) {
  std::string out = std::to_string(p.k) + ";L=";
  for (int i = 0; i < p.k; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p.labels[i]);
  }
  out += ";D=";
  for (int i = 0; i < p.k; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p.degrees[i]);
  }
  out += ";B=";
  const int nbits = p.k * (p.k - 1) / 2;
  const int digits = std::max(1, (nbits + 3) / 4);
  const std::uint32_t bits = p.AdjacencyBits();
  static constexpr char kHex[] = "0123456789abcdef";
  for (int d = digits - 1; d >= 0; --d) out += kHex[(bits >> (4 * d)) & 0xf];
  return out;
}

namespace {

// Iterated color refinement starting from (label, degree). Colors are dense
// ranks of sorted signatures, so color order refines (label, degree) order.
std::array<int, kMaxPatternVertices> RefineColors(const Pattern& p) {
  const int k = p.k;
  std::array<int, kMaxPatternVertices> color{};
  std::vector<std::pair<std::vector<std::uint64_t>, int>> sigs(k);
  for (int v = 0; v < k; ++v) {
    sigs[v] = {{p.labels[v], p.degrees[v]}, v};
  }
  int classes = 0;
  while (true) {
    std::sort(sigs.begin(), sigs.end());
    int rank = -1;
    for (int i = 0; i < k; ++i) {
      if (i == 0 || sigs[i].first != sigs[i - 1].first) ++rank;
      color[sigs[i].second] = rank;
    }
    const int now = rank + 1;
    if (now == classes) break;
    classes = now;
    for (int v = 0; v < k; ++v) {
      std::vector<std::uint64_t> sig{static_cast<std::uint64_t>(color[v])};
      std::vector<std::uint64_t> nbr;
      for (int u = 0; u < k; ++u) {
        if (p.Adjacent(v, u)) nbr.push_back(static_cast<std::uint64_t>(color[u]));
      }
      std::sort(nbr.begin(), nbr.end());
      sig.insert(sig.end(), nbr.begin(), nbr.end());
      sigs[v] = {std::move(sig), v};
    }
  }
  return color;
}

std::uint32_t BitsUnder(const Pattern& p, const std::array<int, kMaxPatternVertices>& order) {
  std::uint32_t bits = 0;
  for (int i = 0; i < p.k; ++i) {
    for (int j = i + 1; j < p.k; ++j) {
      if (p.Adjacent(order[i], order[j])) bits |= 1u << PairBit(p.k, i, j);
    }
  }
  return bits;
}

int Find(std::array<int, kMaxPatternVertices>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

CanonicalForm Canonicalize(const Pattern& p) {
  const int k = p.k;
  auto color = RefineColors(p);
  // order[c] = input position placed at canonical position c.
  std::array<int, kMaxPatternVertices> order{};
  std::iota(order.begin(), order.begin() + k, 0);
  std::sort(order.begin(), order.begin() + k,
            [&](int a, int b) { return std::make_pair(color[a], a) < std::make_pair(color[b], b); });
  std::vector<std::pair<int, int>> cells;  // [begin, end) in canonical positions
  for (int i = 0; i < k;) {
    int j = i;
    while (j < k && color[order[j]] == color[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  std::uint32_t best = ~0u;
  std::vector<std::array<int, kMaxPatternVertices>> optimal;
  auto visit = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      const std::uint32_t bits = BitsUnder(p, order);
      if (bits < best) {
        best = bits;
        optimal.clear();
      }
      if (bits == best) optimal.push_back(order);
      return;
    }
    auto [b, e] = cells[cell];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      self(self, cell + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  visit(visit, 0);

  CanonicalForm form;
  const auto& first = optimal.front();
  std::array<Label, kMaxPatternVertices> labels{};
  for (int c = 0; c < k; ++c) labels[c] = p.labels[first[c]];
  form.canonical = Pattern::FromBits(k, std::span(labels.data(), k), best);

  std::array<int, kMaxPatternVertices> inverse{};
  for (int c = 0; c < k; ++c) inverse[first[c]] = c;
  std::array<int, kMaxPatternVertices> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& other : optimal) {
    for (int c = 0; c < k; ++c) {
      const int a = Find(parent, c);
      const int b = Find(parent, inverse[other[c]]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::array<int, kMaxPatternVertices> min_of{};
  min_of.fill(kMaxPatternVertices);
  for (int c = 0; c < k; ++c) {
    const int r = Find(parent, c);
    min_of[r] = std::min(min_of[r], c);
  }
  // Dense orbit ids, numbered by the smallest canonical position of each orbit.
  std::array<int, kMaxPatternVertices> dense{};
  for (int c = 0; c < k; ++c) {
    if (min_of[Find(parent, c)] == c) dense[c] = form.orbit_count++;
  }
  for (int pos = 0; pos < k; ++pos) {
    form.orbit[pos] = static_cast<std::int8_t>(dense[min_of[Find(parent, inverse[pos])]]);
  }
  return form;
}

std::size_t CanonicalCache::KeyHash::operator()(const Pattern& p) const {
  Fnv h;
  h.Byte(static_cast<std::uint8_t>(p.k));
  for (int i = 0; i < p.k; ++i) {
    h.Le<std::uint32_t>(p.labels[i]);
    h.Byte(p.rows[i]);
  }
  return h.h;
}

const CanonicalForm& CanonicalCache::Get(const Pattern& p) {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(p, Canonicalize(p)).first->second;
}

}  // namespace kaleido
