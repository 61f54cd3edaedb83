#pragma once

// Coset enumeration and the resulting concrete model of a finite group.
//
// A FiniteRealization stores, for each generator, the permutation of element
// ids given by left multiplication.  Ids come from the enumerator's
// first-discovery order after coincidence compaction; id 0 is the identity.
// Words act on ids right to left, matching left multiplication.

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plusctl/errors.hpp"
#include "plusctl/words.hpp"

namespace plusctl {

class FiniteRealization {
 public:
  /// Build from left-multiplication tables; validates bijectivity and
  /// transitivity and precomputes BFS words and inverses.
  static FiniteRealization from_tables(std::vector<std::vector<int>> tables) {
    FiniteRealization r;
    r.tables_ = std::move(tables);
    if (r.tables_.empty()) throw ValidationError("realization needs at least one generator table");
    r.order_ = static_cast<int>(r.tables_[0].size());
    if (r.order_ <= 0) throw ValidationError("realization order must be positive");
    r.derive();
    return r;
  }

  /// The one-element group on `generator_count` generators.
  static FiniteRealization trivial(int generator_count) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(generator_count),
                                    std::vector<int>{0});
    return from_tables(std::move(t));
  }

  int order() const { return order_; }
  int generator_count() const { return static_cast<int>(tables_.size()); }
  const std::vector<std::vector<int>>& tables() const { return tables_; }

  /// Apply one signed letter on the left: +g maps x to g*x, -g to g^-1*x.
  int apply_letter(std::int32_t letter, int x) const {
    const int idx = letter > 0 ? letter : -letter;
    if (idx < 1 || idx > generator_count())
      throw ValidationError("letter outside realization alphabet");
    return letter > 0 ? tables_[static_cast<std::size_t>(idx - 1)][static_cast<std::size_t>(x)]
                      : inverse_tables_[static_cast<std::size_t>(idx - 1)][static_cast<std::size_t>(x)];
  }

  /// Image of a word: letters applied right to left starting at the identity.
  int image_of_word(const Word& w) const {
    int x = 0;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) x = apply_letter(*it, x);
    return x;
  }

  /// Apply a whole word on the left of an arbitrary element id.
  int apply_word(const Word& w, int x) const {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) x = apply_letter(*it, x);
    return x;
  }

  /// Minimal-length representative word from the discovery BFS (letters tried
  /// in order +1, -1, +2, -2, ...).  image_of_word(word_for_element(x)) == x.
  Word word_for_element(int x) const {
    check_id(x);
    Word w;
    while (x != 0) {
      w.letters.push_back(bfs_letter_[static_cast<std::size_t>(x)]);
      x = bfs_parent_[static_cast<std::size_t>(x)];
    }
    return w;  // letters already run root-ward, i.e. left to right
  }

  /// Group product of two element ids.
  int mult(int x, int y) const {
    check_id(x);
    check_id(y);
    if (!product_.empty()) return product_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    // x as its BFS word applied to y
    int r = y;
    std::vector<std::int32_t> chain;
    for (int c = x; c != 0; c = bfs_parent_[static_cast<std::size_t>(c)])
      chain.push_back(bfs_letter_[static_cast<std::size_t>(c)]);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) r = apply_letter(*it, r);
    return r;
  }

  int inv(int x) const {
    check_id(x);
    return inverse_element_[static_cast<std::size_t>(x)];
  }

  /// Identity permutation check for a word (stronger than image == identity
  /// for tables not produced by enumeration).
  bool acts_trivially(const Word& w) const {
    for (int x = 0; x < order_; ++x)
      if (apply_word(w, x) != x) return false;
    return true;
  }

  /// Renumber ids by BFS discovery from 0 with the fixed letter order.  Two
  /// realizations of the same group with the same generator images have equal
  /// canonical tables.
  std::vector<std::vector<int>> canonical_tables() const {
    std::vector<int> newid(static_cast<std::size_t>(order_), -1);
    std::vector<int> oldid;
    oldid.reserve(static_cast<std::size_t>(order_));
    newid[0] = 0;
    oldid.push_back(0);
    for (std::size_t head = 0; head < oldid.size(); ++head) {
      const int x = oldid[head];
      for (int g = 1; g <= generator_count(); ++g)
        for (const int letter : {g, -g}) {
          const int y = apply_letter(letter, x);
          if (newid[static_cast<std::size_t>(y)] < 0) {
            newid[static_cast<std::size_t>(y)] = static_cast<int>(oldid.size());
            oldid.push_back(y);
          }
        }
    }
    std::vector<std::vector<int>> t(tables_.size(),
                                    std::vector<int>(static_cast<std::size_t>(order_)));
    for (std::size_t g = 0; g < tables_.size(); ++g)
      for (int x = 0; x < order_; ++x)
        t[g][static_cast<std::size_t>(newid[static_cast<std::size_t>(x)])] =
            newid[static_cast<std::size_t>(tables_[g][static_cast<std::size_t>(x)])];
    return t;
  }

  friend bool operator==(const FiniteRealization& a, const FiniteRealization& b) {
    return a.order_ == b.order_ && a.tables_ == b.tables_;
  }

 private:
  void check_id(int x) const {
    if (x < 0 || x >= order_) throw ValidationError("element id outside realization");
  }

  void derive() {
    const std::size_t n = tables_.size();
    const std::size_t ord = static_cast<std::size_t>(order_);
    inverse_tables_.assign(n, std::vector<int>(ord, -1));
    for (std::size_t g = 0; g < n; ++g) {
      if (tables_[g].size() != ord) throw ValidationError("generator tables disagree on order");
      for (std::size_t x = 0; x < ord; ++x) {
        const int y = tables_[g][x];
        if (y < 0 || y >= order_) throw ValidationError("table entry out of range");
        if (inverse_tables_[g][static_cast<std::size_t>(y)] != -1)
          throw ValidationError("generator table is not a bijection");
        inverse_tables_[g][static_cast<std::size_t>(y)] = static_cast<int>(x);
      }
    }
    // Discovery BFS; also the transitivity check.
    bfs_parent_.assign(ord, -1);
    bfs_letter_.assign(ord, 0);
    std::vector<char> seen(ord, 0);
    seen[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      for (int g = 1; g <= static_cast<int>(n); ++g)
        for (const int letter : {g, -g}) {
          const int y = apply_letter(letter, x);
          if (!seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            bfs_parent_[static_cast<std::size_t>(y)] = x;
            bfs_letter_[static_cast<std::size_t>(y)] = letter;
            queue.push_back(y);
          }
        }
    }
    if (queue.size() != ord)
      throw ValidationError("generator action is not transitive from the identity");
    // Dense products only at small orders; larger realizations multiply
    // through BFS chains on demand.
    if (order_ <= kDenseProductLimit) {
      product_.assign(ord, std::vector<int>(ord));
      for (int x : queue) {
        if (x == 0) {
          for (std::size_t y = 0; y < ord; ++y) product_[0][y] = static_cast<int>(y);
          continue;
        }
        const auto& parent_row = product_[static_cast<std::size_t>(bfs_parent_[static_cast<std::size_t>(x)])];
        auto& row = product_[static_cast<std::size_t>(x)];
        const int letter = bfs_letter_[static_cast<std::size_t>(x)];
        for (std::size_t y = 0; y < ord; ++y) row[y] = apply_letter(letter, parent_row[y]);
      }
    }
    inverse_element_.assign(ord, -1);
    for (std::size_t x = 0; x < ord; ++x) {
      int v = 0;
      for (int c = static_cast<int>(x); c != 0; c = bfs_parent_[static_cast<std::size_t>(c)])
        v = apply_letter(-bfs_letter_[static_cast<std::size_t>(c)], v);
      inverse_element_[x] = v;
    }
  }

  static constexpr int kDenseProductLimit = 2048;

  int order_ = 0;
  std::vector<std::vector<int>> tables_;
  std::vector<std::vector<int>> inverse_tables_;
  std::vector<int> bfs_parent_, bfs_letter_;
  std::vector<int> inverse_element_;
  std::vector<std::vector<int>> product_;
};

/// True when every relator of p induces the identity permutation on r, i.e.
/// r realizes a quotient of the group presented by p.
inline bool relators_act_trivially(const Presentation& p, const FiniteRealization& r) {
  if (r.generator_count() != p.generator_count()) return false;
  for (const Word& w : p.relators)
    if (!r.acts_trivially(w)) return false;
  return true;
}

/// Same group with the same generator images, up to renumbering.
inline bool isomorphic_realizations(const FiniteRealization& a, const FiniteRealization& b) {
  return a.order() == b.order() && a.generator_count() == b.generator_count() &&
         a.canonical_tables() == b.canonical_tables();
}

namespace detail {

// HLT-style enumerator over the trivial subgroup.  Deterministic: relators
// are traced in presentation order at cosets in ascending id order, rows are
// completed left to right, and coincidences always keep the smaller id.
class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, std::size_t max_cosets)
      : ncols_(2 * static_cast<std::size_t>(p.generator_count())), max_cosets_(max_cosets) {
    for (const Word& w : p.relators) relators_.push_back(free_reduce(w).letters);
    new_coset();
  }

  std::vector<std::vector<int>> run() {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (rep(static_cast<int>(c)) != static_cast<int>(c)) continue;
      for (const auto& rel : relators_) {
        scan_and_fill(static_cast<int>(c), rel);
        if (rep(static_cast<int>(c)) != static_cast<int>(c)) break;
      }
      if (rep(static_cast<int>(c)) != static_cast<int>(c)) continue;
      for (std::size_t col = 0; col < ncols_; ++col)
        if (table_[c][col] < 0) {
          const int d = new_coset();
          table_[c][col] = d;
          table_[static_cast<std::size_t>(d)][invcol(col)] = static_cast<int>(c);
        }
    }
    return compact();
  }

 private:
  static std::size_t col_of(std::int32_t letter) {
    return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                      : 2 * static_cast<std::size_t>(-letter - 1) + 1;
  }
  static std::size_t invcol(std::size_t col) { return col ^ 1u; }

  int new_coset() {
    if (table_.size() >= max_cosets_)
      throw ResourceExhausted("coset limit of " + std::to_string(max_cosets_) +
                              " exceeded during enumeration");
    table_.emplace_back(ncols_, -1);
    rep_.push_back(static_cast<int>(rep_.size()));
    return static_cast<int>(table_.size()) - 1;
  }

  int rep(int c) {
    while (rep_[static_cast<std::size_t>(c)] != c) {
      rep_[static_cast<std::size_t>(c)] = rep_[static_cast<std::size_t>(rep_[static_cast<std::size_t>(c)])];
      c = rep_[static_cast<std::size_t>(c)];
    }
    return c;
  }

  // Trace the condition rel * c == c, defining cosets across gaps.  Letters
  // apply right to left, so the forward frontier walks from the word's end.
  void scan_and_fill(int c, const std::vector<std::int32_t>& rel) {
    int f = c, b = c;
    std::size_t fpos = rel.size(), bpos = 0;
    while (true) {
      while (fpos > bpos) {
        const int nxt = table_[static_cast<std::size_t>(f)][col_of(rel[fpos - 1])];
        if (nxt < 0) break;
        f = rep(nxt);
        --fpos;
      }
      if (fpos == bpos) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (bpos < fpos) {
        const int nxt = table_[static_cast<std::size_t>(b)][col_of(-rel[bpos])];
        if (nxt < 0) break;
        b = rep(nxt);
        ++bpos;
      }
      if (fpos == bpos) {
        if (f != b) coincidence(f, b);
        return;
      }
      if (fpos - bpos == 1) {
        // one undefined transition left; closing it is forced
        const std::size_t col = col_of(rel[bpos]);
        table_[static_cast<std::size_t>(f)][col] = b;
        table_[static_cast<std::size_t>(b)][invcol(col)] = f;
        return;
      }
      const std::size_t col = col_of(rel[fpos - 1]);
      const int d = new_coset();
      table_[static_cast<std::size_t>(f)][col] = d;
      table_[static_cast<std::size_t>(d)][invcol(col)] = f;
    }
  }

  void coincidence(int a, int b) {
    std::deque<std::pair<int, int>> q{{a, b}};
    while (!q.empty()) {
      int x = rep(q.front().first), y = rep(q.front().second);
      q.pop_front();
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      rep_[static_cast<std::size_t>(y)] = x;  // keep the smaller, earlier id
      for (std::size_t col = 0; col < ncols_; ++col) {
        const int raw = table_[static_cast<std::size_t>(y)][col];
        if (raw < 0) continue;
        table_[static_cast<std::size_t>(y)][col] = -1;
        const int d = rep(raw);
        const std::size_t ic = invcol(col);
        int& fwd = table_[static_cast<std::size_t>(x)][col];
        if (fwd < 0)
          fwd = d;
        else if (rep(fwd) != d)
          q.emplace_back(rep(fwd), d);
        int& bwd = table_[static_cast<std::size_t>(d)][ic];
        if (bwd < 0)
          bwd = x;
        else if (rep(bwd) != x)
          q.emplace_back(rep(bwd), x);
      }
    }
  }

  std::vector<std::vector<int>> compact() {
    std::vector<int> newid(table_.size(), -1);
    std::vector<int> live;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (rep(static_cast<int>(c)) == static_cast<int>(c)) {
        newid[c] = static_cast<int>(live.size());
        live.push_back(static_cast<int>(c));
      }
    const std::size_t order = live.size();
    std::vector<std::vector<int>> tables(ncols_ / 2, std::vector<int>(order, -1));
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t g = 0; g < ncols_ / 2; ++g) {
        const int e = table_[static_cast<std::size_t>(live[i])][2 * g];
        if (e < 0) throw ValidationError("internal: incomplete coset table after enumeration");
        tables[g][i] = newid[static_cast<std::size_t>(rep(e))];
      }
    return tables;
  }

  std::size_t ncols_;
  std::size_t max_cosets_;
  std::vector<std::vector<std::int32_t>> relators_;
  std::vector<std::vector<int>> table_;
  std::vector<int> rep_;
};

}  // namespace detail

constexpr std::size_t kDefaultMaxCosets = 1'000'000;

/// Enumerate the group presented by p over the trivial subgroup.  Throws
/// ResourceExhausted when more than max_cosets cosets would be allocated,
/// which is the expected outcome for infinite groups.
inline FiniteRealization todd_coxeter(const Presentation& p,
                                      std::size_t max_cosets = kDefaultMaxCosets) {
  p.validate();
  detail::CosetEnumerator enumerator(p, max_cosets);
  FiniteRealization r = FiniteRealization::from_tables(enumerator.run());
  if (!relators_act_trivially(p, r))
    throw ValidationError("internal: a relator acts nontrivially after enumeration");
  return r;
}

using RealizationPtr = std::shared_ptr<const FiniteRealization>;

inline RealizationPtr share(FiniteRealization r) {
  return std::make_shared<const FiniteRealization>(std::move(r));
}

}  // namespace plusctl
