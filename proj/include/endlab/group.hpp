#pragma once

// Free products of finite groups and free abelian groups: normal forms,
// the word metric for the union generating set, and coset projections.

#include <algorithm>
#include <cctype>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "endlab/errors.hpp"

namespace endlab {

inline constexpr std::size_t kMaxRank = 3;
using FactorValue = std::array<std::int32_t, kMaxRank>;

enum class FactorKind { Finite, FreeAbelian };

struct FactorSpec {
  std::string name;
  FactorKind kind = FactorKind::FreeAbelian;
  int rank = 1;                         // free abelian factors
  std::vector<std::vector<int>> table;  // finite factors, row-major, 0 = identity
  std::vector<int> generators;          // finite factors; empty = all nonidentity elements
  std::optional<bool> peripheral;       // default: one-ended (Z^d with d >= 2)

  bool operator==(const FactorSpec&) const = default;
};

struct GroupSpec {
  std::vector<FactorSpec> factors;
  bool operator==(const GroupSpec&) const = default;
};

inline FactorSpec free_abelian_factor(std::string name, int rank) {
  FactorSpec f;
  f.name = std::move(name);
  f.kind = FactorKind::FreeAbelian;
  f.rank = rank;
  return f;
}

inline FactorSpec cyclic_factor(std::string name, int order) {
  FactorSpec f;
  f.name = std::move(name);
  f.kind = FactorKind::Finite;
  f.rank = 0;
  f.table.assign(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) f.table[i][j] = (i + j) % order;
  return f;
}

// F_k as the free product of k copies of Z, factors named a, b, c, ...
inline GroupSpec free_group_spec(int rank) {
  GroupSpec g;
  for (int i = 0; i < rank; ++i) g.factors.push_back(free_abelian_factor(std::string(1, char('a' + i)), 1));
  return g;
}

struct Syllable {
  std::uint32_t factor = 0;
  FactorValue value{};

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Normal form: alternating factors, no identity syllables. Construction is
// unchecked; Group::validate enforces the invariants.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<Syllable> syllables) : syl_(std::move(syllables)) {}

  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  std::size_t syllable_count() const noexcept { return syl_.size(); }
  bool is_identity() const noexcept { return syl_.empty(); }

  GroupElement prefix(std::size_t count) const {
    return GroupElement(std::vector<Syllable>(syl_.begin(), syl_.begin() + static_cast<std::ptrdiff_t>(std::min(count, syl_.size()))));
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  friend class Group;
  std::vector<Syllable> syl_;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::uint64_t h = 0x51ed270b27d8f0a3ULL ^ g.syllable_count();
    for (const auto& s : g.syllables()) {
      h = mix64(h ^ s.factor);
      for (auto v : s.value) h = mix64(h ^ static_cast<std::uint32_t>(v));
    }
    return static_cast<std::size_t>(h);
  }
};

// One factor of the free product with its own Cayley graph.
class Factor {
 public:
  Factor(const FactorSpec& spec, std::size_t index) : name_(spec.name), kind_(spec.kind) {
    const std::string where = "factor " + std::to_string(index) + " (" + spec.name + ")";
    if (name_.empty()) throw SpecError(where + ": empty name");
    if (kind_ == FactorKind::FreeAbelian) {
      if (spec.rank < 1) throw SpecError(where + ": rank must be >= 1");
      if (spec.rank > static_cast<int>(kMaxRank))
        throw SpecError(where + ": rank " + std::to_string(spec.rank) + " exceeds supported maximum " + std::to_string(kMaxRank));
      rank_ = spec.rank;
      for (int i = 0; i < rank_; ++i) {
        FactorValue up{}, down{};
        up[i] = 1;
        down[i] = -1;
        generators_.push_back(up);
        generators_.push_back(down);
      }
      peripheral_ = spec.peripheral.value_or(rank_ >= 2);
    } else {
      init_finite(spec, where);
      peripheral_ = spec.peripheral.value_or(false);
    }
  }

  const std::string& name() const noexcept { return name_; }
  FactorKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return rank_; }
  int order() const noexcept { return order_; }  // 0 for free abelian factors
  bool peripheral() const noexcept { return peripheral_; }
  const std::vector<FactorValue>& generators() const noexcept { return generators_; }

  bool is_identity(const FactorValue& v) const noexcept { return v == FactorValue{}; }

  bool valid(const FactorValue& v) const noexcept {
    if (kind_ == FactorKind::FreeAbelian) {
      for (std::size_t i = static_cast<std::size_t>(rank_); i < kMaxRank; ++i)
        if (v[i] != 0) return false;
      return true;
    }
    if (v[0] < 0 || v[0] >= order_) return false;
    return v[1] == 0 && v[2] == 0;
  }

  FactorValue mul(const FactorValue& a, const FactorValue& b) const noexcept {
    FactorValue r{};
    if (kind_ == FactorKind::FreeAbelian) {
      for (int i = 0; i < rank_; ++i) r[i] = a[i] + b[i];
    } else {
      r[0] = table_[static_cast<std::size_t>(a[0]) * order_ + b[0]];
    }
    return r;
  }

  FactorValue inverse(const FactorValue& a) const noexcept {
    FactorValue r{};
    if (kind_ == FactorKind::FreeAbelian) {
      for (int i = 0; i < rank_; ++i) r[i] = -a[i];
    } else {
      r[0] = inverse_[static_cast<std::size_t>(a[0])];
    }
    return r;
  }

  std::int64_t length(const FactorValue& v) const noexcept {
    if (kind_ == FactorKind::FreeAbelian) {
      std::int64_t s = 0;
      for (int i = 0; i < rank_; ++i) s += std::abs(static_cast<std::int64_t>(v[i]));
      return s;
    }
    return length_[static_cast<std::size_t>(v[0])];
  }

  std::int64_t distance(const FactorValue& a, const FactorValue& b) const noexcept { return length(mul(inverse(a), b)); }

  // Number of factor elements at word length k.
  std::uint64_t sphere_size(int k) const {
    if (k < 0) return 0;
    if (kind_ == FactorKind::FreeAbelian) return l1_sphere_size(rank_, k);
    return static_cast<std::uint64_t>(std::count(length_.begin(), length_.end(), k));
  }

  std::vector<FactorValue> sphere(int k) const {
    std::vector<FactorValue> out;
    if (k < 0) return out;
    if (kind_ == FactorKind::FreeAbelian) {
      FactorValue cur{};
      enumerate_l1(0, k, cur, out);
    } else {
      for (int v = 0; v < order_; ++v)
        if (length_[static_cast<std::size_t>(v)] == k) out.push_back(FactorValue{v, 0, 0});
    }
    return out;
  }

  // Vertices of the canonical geodesic from the identity to v (inclusive).
  // Free abelian: coordinate by coordinate; finite: BFS tree path.
  std::vector<FactorValue> canonical_path(const FactorValue& v) const {
    std::vector<FactorValue> path;
    if (kind_ == FactorKind::FreeAbelian) {
      FactorValue cur{};
      path.push_back(cur);
      for (int i = 0; i < rank_; ++i) {
        const int step = v[i] > 0 ? 1 : -1;
        while (cur[i] != v[i]) {
          cur[i] += step;
          path.push_back(cur);
        }
      }
      return path;
    }
    for (int x = v[0]; x != 0; x = parent_[static_cast<std::size_t>(x)]) path.push_back(FactorValue{x, 0, 0});
    path.push_back(FactorValue{});
    std::reverse(path.begin(), path.end());
    return path;
  }

  // Whether u and w lie in one component of the factor's Cayley graph
  // restricted to {z : |z| >= k}.
  bool same_component_outside(const FactorValue& u, const FactorValue& w, std::int64_t k) const {
    if (k <= 0) return true;
    if (length(u) < k || length(w) < k) return false;
    if (kind_ == FactorKind::FreeAbelian) {
      if (rank_ >= 2) return true;
      return (u[0] > 0) == (w[0] > 0);
    }
    std::vector<char> seen(static_cast<std::size_t>(order_), 0);
    std::deque<int> queue{u[0]};
    seen[static_cast<std::size_t>(u[0])] = 1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (x == w[0]) return true;
      for (const auto& g : generators_) {
        const int y = table_[static_cast<std::size_t>(x) * order_ + g[0]];
        if (!seen[static_cast<std::size_t>(y)] && length_[static_cast<std::size_t>(y)] >= k) {
          seen[static_cast<std::size_t>(y)] = 1;
          queue.push_back(y);
        }
      }
    }
    return false;
  }

  static std::uint64_t l1_sphere_size(int d, int k) {
    if (k == 0) return 1;
    // sum_i 2^i C(d,i) C(k-1,i-1)
    std::uint64_t total = 0;
    for (int i = 1; i <= std::min(d, k); ++i) total += (std::uint64_t{1} << i) * binom(d, i) * binom(k - 1, i - 1);
    return total;
  }

 private:
  static std::uint64_t binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    return out;
  }

  void enumerate_l1(int axis, int remaining, FactorValue& cur, std::vector<FactorValue>& out) const {
    if (axis == rank_ - 1) {
      if (remaining == 0) {
        cur[axis] = 0;
        out.push_back(cur);
      } else {
        cur[axis] = -remaining;
        out.push_back(cur);
        cur[axis] = remaining;
        out.push_back(cur);
      }
      cur[axis] = 0;
      return;
    }
    for (int x = -remaining; x <= remaining; ++x) {
      cur[axis] = x;
      enumerate_l1(axis + 1, remaining - std::abs(x), cur, out);
    }
    cur[axis] = 0;
  }

  void init_finite(const FactorSpec& spec, const std::string& where) {
    rank_ = 0;
    order_ = static_cast<int>(spec.table.size());
    if (order_ < 2) throw SpecError(where + ": finite factor must be nontrivial");
    table_.resize(static_cast<std::size_t>(order_) * order_);
    for (int i = 0; i < order_; ++i) {
      const auto& row = spec.table[static_cast<std::size_t>(i)];
      if (static_cast<int>(row.size()) != order_)
        throw SpecError(where + ": table row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(order_));
      for (int j = 0; j < order_; ++j) {
        const int x = row[static_cast<std::size_t>(j)];
        if (x < 0 || x >= order_)
          throw SpecError(where + ": table[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(x) + " out of range");
        table_[static_cast<std::size_t>(i) * order_ + j] = x;
      }
    }
    auto at = [&](int i, int j) { return table_[static_cast<std::size_t>(i) * order_ + j]; };
    for (int i = 0; i < order_; ++i)
      if (at(0, i) != i || at(i, 0) != i) throw SpecError(where + ": element 0 is not the identity (row/column " + std::to_string(i) + ")");
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int i = 0; i < order_; ++i) {
      for (int j = 0; j < order_; ++j)
        if (at(i, j) == 0 && at(j, i) == 0) inverse_[static_cast<std::size_t>(i)] = j;
      if (inverse_[static_cast<std::size_t>(i)] < 0) throw SpecError(where + ": element " + std::to_string(i) + " has no inverse");
    }
    for (int i = 0; i < order_; ++i)
      for (int j = 0; j < order_; ++j)
        for (int k = 0; k < order_; ++k)
          if (at(at(i, j), k) != at(i, at(j, k)))
            throw SpecError(where + ": table not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");

    std::vector<int> gens;
    if (spec.generators.empty()) {
      for (int i = 1; i < order_; ++i) gens.push_back(i);
    } else {
      for (int g : spec.generators) {
        if (g <= 0 || g >= order_) throw SpecError(where + ": generator " + std::to_string(g) + " must be a nonidentity element");
        gens.push_back(g);
        gens.push_back(inverse_[static_cast<std::size_t>(g)]);
      }
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    }
    for (int g : gens) generators_.push_back(FactorValue{g, 0, 0});

    length_.assign(static_cast<std::size_t>(order_), -1);
    parent_.assign(static_cast<std::size_t>(order_), 0);
    length_[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int g : gens) {
        const int y = at(x, g);
        if (length_[static_cast<std::size_t>(y)] < 0) {
          length_[static_cast<std::size_t>(y)] = length_[static_cast<std::size_t>(x)] + 1;
          parent_[static_cast<std::size_t>(y)] = x;
          queue.push_back(y);
        }
      }
    }
    for (int i = 0; i < order_; ++i)
      if (length_[static_cast<std::size_t>(i)] < 0) throw SpecError(where + ": generators do not generate element " + std::to_string(i));
  }

  std::string name_;
  FactorKind kind_;
  int rank_ = 0;
  int order_ = 0;
  bool peripheral_ = false;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> length_;
  std::vector<int> parent_;
  std::vector<FactorValue> generators_;
};

// The left coset representative*P_factor.
struct CosetRef {
  GroupElement representative;
  std::uint32_t factor = 0;
  bool operator==(const CosetRef&) const = default;
};

struct CosetProjection {
  std::int64_t value = 0;
  std::optional<CosetRef> witness;  // empty for the identity
};

// A maximal run of the normal-form geodesic inside one factor coset.
struct GeodesicSegment {
  std::uint32_t factor = 0;
  std::int64_t begin = 0;  // position (distance from the start) of the first vertex
  std::int64_t end = 0;    // position of the last vertex
  bool peripheral = false;
};

class Group {
 public:
  explicit Group(GroupSpec spec) : spec_(std::move(spec)) {
    if (spec_.factors.size() < 2) throw SpecError("group needs at least 2 factors (infinitely many ends)");
    for (std::size_t i = 0; i < spec_.factors.size(); ++i) factors_.emplace_back(spec_.factors[i], i);
    if (factors_.size() == 2 && factors_[0].order() == 2 && factors_[1].order() == 2)
      throw SpecError("Z/2 * Z/2 is two-ended (virtually cyclic); infinitely many ends required");
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (factors_[i].name() == factors_[j].name()) throw SpecError("duplicate factor name '" + factors_[i].name() + "'");
    for (std::size_t f = 0; f < factors_.size(); ++f)
      for (const auto& v : factors_[f].generators()) generators_.push_back(GroupElement({Syllable{static_cast<std::uint32_t>(f), v}}));
  }

  const GroupSpec& spec() const noexcept { return spec_; }
  std::size_t factor_count() const noexcept { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  GroupElement identity() const { return {}; }

  void validate(const GroupElement& g) const {
    const auto& s = g.syllables();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].factor >= factors_.size())
        throw SpecError("syllable " + std::to_string(i) + ": factor index " + std::to_string(s[i].factor) + " not in this group");
      const auto& f = factors_[s[i].factor];
      if (!f.valid(s[i].value)) throw SpecError("syllable " + std::to_string(i) + ": value invalid for factor " + f.name());
      if (f.is_identity(s[i].value)) throw SpecError("syllable " + std::to_string(i) + ": identity syllable in normal form");
      if (i > 0 && s[i - 1].factor == s[i].factor) throw SpecError("syllable " + std::to_string(i) + ": repeats the factor of its predecessor");
    }
  }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
    validate(a);
    validate(b);
    GroupElement r = a;
    right_multiply(r, b);
    return r;
  }

  // g <- g*s without validation; cost O(|s|).
  void right_multiply(GroupElement& g, const GroupElement& s) const {
    auto& out = g.syl_;
    for (const auto& syl : s.syl_) {
      if (!out.empty() && out.back().factor == syl.factor) {
        const auto& f = factors_[syl.factor];
        const FactorValue v = f.mul(out.back().value, syl.value);
        if (f.is_identity(v))
          out.pop_back();
        else
          out.back().value = v;
      } else {
        out.push_back(syl);
      }
    }
  }

  GroupElement invert(const GroupElement& g) const {
    std::vector<Syllable> out(g.syl_.rbegin(), g.syl_.rend());
    for (auto& s : out) s.value = factors_[s.factor].inverse(s.value);
    return GroupElement(std::move(out));
  }

  // d(1, g) for the union generating set: syllable lengths add.
  std::int64_t word_length(const GroupElement& g) const noexcept {
    std::int64_t total = 0;
    for (const auto& s : g.syl_) total += factors_[s.factor].length(s.value);
    return total;
  }

  std::int64_t distance(const GroupElement& a, const GroupElement& b) const {
    GroupElement d = invert(a);
    right_multiply(d, b);
    return word_length(d);
  }

  // Shortlex: word length first, then syllable order.
  bool canonical_less(const GroupElement& a, const GroupElement& b) const {
    const auto la = word_length(a), lb = word_length(b);
    if (la != lb) return la < lb;
    return a < b;
  }

  std::string format(const GroupElement& g) const {
    if (g.is_identity()) return "1";
    std::string out;
    for (std::size_t i = 0; i < g.syl_.size(); ++i) {
      if (i) out += '*';
      const auto& s = g.syl_[i];
      const auto& f = factors_[s.factor];
      out += f.name();
      if (f.kind() == FactorKind::Finite) {
        out += '[' + std::to_string(s.value[0]) + ']';
      } else if (f.rank() == 1) {
        if (s.value[0] != 1) out += '^' + std::to_string(s.value[0]);
      } else {
        out += '(';
        for (int k = 0; k < f.rank(); ++k) out += (k ? "," : "") + std::to_string(s.value[static_cast<std::size_t>(k)]);
        out += ')';
      }
    }
    return out;
  }

  // Parses a product of syllable tokens separated by '*' or whitespace:
  // a, a^-3, z(1,-2), c[2]; "1" is the identity. The product need not be
  // reduced; the result is its normal form.
  GroupElement parse(std::string_view text) const {
    GroupElement out;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> void { throw SpecError("word '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + msg); };
    auto skip = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '*' || text[pos] == '.')) ++pos;
    };
    auto read_int = [&]() -> std::int64_t {
      std::size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      const std::size_t digits = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos == digits) fail("expected integer");
      const std::int64_t v = std::stoll(std::string(text.substr(start, pos - start)));
      if (v > 1'000'000'000 || v < -1'000'000'000) fail("integer out of range");
      return v;
    };
    skip();
    while (pos < text.size()) {
      const std::size_t start = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
      const std::string name(text.substr(start, pos - start));
      if (name.empty()) fail("expected a factor name");
      std::optional<std::size_t> fi;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].name() == name) fi = i;
      if (!fi) {
        if (name == "1" || name == "e") {
          skip();
          continue;
        }
        fail("unknown factor '" + name + "'");
      }
      const auto& f = factors_[*fi];
      FactorValue v{};
      if (pos < text.size() && text[pos] == '[') {
        if (f.kind() != FactorKind::Finite) fail("'[i]' only applies to finite factors");
        ++pos;
        const auto x = read_int();
        if (x < 0 || x >= f.order()) fail("element index out of range for " + name);
        v[0] = static_cast<std::int32_t>(x);
        if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
        ++pos;
      } else if (pos < text.size() && text[pos] == '(') {
        if (f.kind() != FactorKind::FreeAbelian) fail("'(v..)' only applies to free abelian factors");
        ++pos;
        for (int k = 0; k < f.rank(); ++k) {
          if (k) {
            if (pos >= text.size() || text[pos] != ',') fail("expected ','");
            ++pos;
          }
          v[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(read_int());
        }
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
        ++pos;
      } else {
        // Bare name: the unit of a rank-1 factor, or element 1 of a finite table.
        if (f.kind() == FactorKind::FreeAbelian && f.rank() != 1) fail("rank-" + std::to_string(f.rank()) + " factor needs a vector");
        v[0] = 1;
      }
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        const auto e = read_int();
        FactorValue acc{};
        if (f.kind() == FactorKind::FreeAbelian) {
          for (int k = 0; k < f.rank(); ++k) acc[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(v[static_cast<std::size_t>(k)] * e);
        } else {
          const FactorValue base = e >= 0 ? v : f.inverse(v);
          for (std::int64_t k = 0; k < std::abs(e); ++k) acc = f.mul(acc, base);
        }
        v = acc;
      }
      if (!f.is_identity(v)) right_multiply(out, GroupElement({Syllable{static_cast<std::uint32_t>(*fi), v}}));
      skip();
    }
    return out;
  }

  // Max over factor cosets U met by the normal form of d_U(1, g): in a free
  // product the projections of 1 and g onto prefix*P differ by the syllable.
  CosetProjection coset_projection_sup(const GroupElement& g) const {
    CosetProjection best;
    for (std::size_t i = 0; i < g.syl_.size(); ++i) {
      const auto len = factors_[g.syl_[i].factor].length(g.syl_[i].value);
      if (len > best.value) {
        best.value = len;
        best.witness = CosetRef{g.prefix(i), g.syl_[i].factor};
      }
    }
    return best;
  }

  std::vector<GeodesicSegment> geodesic_segments(const GroupElement& g) const {
    std::vector<GeodesicSegment> out;
    std::int64_t pos = 0;
    for (const auto& s : g.syl_) {
      const auto& f = factors_[s.factor];
      const auto len = f.length(s.value);
      out.push_back({s.factor, pos, pos + len, f.peripheral()});
      pos += len;
    }
    return out;
  }

  // Vertices of the normal-form geodesic from 1 to g, one per unit of length.
  std::vector<GroupElement> geodesic_vertices(const GroupElement& g) const {
    std::vector<GroupElement> out{GroupElement{}};
    std::vector<Syllable> prefix;
    for (const auto& s : g.syl_) {
      const auto path = factors_[s.factor].canonical_path(s.value);
      for (std::size_t k = 1; k < path.size(); ++k) {
        auto syl = prefix;
        syl.push_back(Syllable{s.factor, path[k]});
        out.emplace_back(std::move(syl));
      }
      prefix.push_back(s);
    }
    return out;
  }

 private:
  GroupSpec spec_;
  std::vector<Factor> factors_;
  std::vector<GroupElement> generators_;
};

}  // namespace endlab
