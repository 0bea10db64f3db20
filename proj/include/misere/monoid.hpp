#ifndef MISERE_MONOID_HPP_
#define MISERE_MONOID_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "rewriting.hpp"
#include "words.hpp"

namespace misere {

  using element = std::uint32_t;

  // A finite commutative semigroup given by its multiplication table.
  class FiniteSemigroup {
   public:
    FiniteSemigroup() = default;

    FiniteSemigroup(std::vector<std::string> names, std::vector<std::vector<element>> table)
        : names_(std::move(names)), table_(std::move(table)) {
      if (table_.size() != names_.size()) {
        throw InputError("table size does not match element count");
      }
      for (auto const& row : table_) {
        if (row.size() != names_.size()) {
          throw InputError("multiplication table is not square");
        }
        for (auto v : row) {
          if (v >= names_.size()) {
            throw InputError("multiplication table entry out of range");
          }
        }
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return names_.size();
    }

    [[nodiscard]] element mul(element a, element b) const {
      return table_[a][b];
    }

    [[nodiscard]] element pow(element a, std::uint64_t k) const {
      if (k == 0) {
        throw LogicError("pow: zero exponent in a semigroup");
      }
      element r = a;
      for (std::uint64_t i = 1; i < k; ++i) {
        r = mul(r, a);
      }
      return r;
    }

    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return names_;
    }

    [[nodiscard]] std::string const& name(element a) const {
      return names_.at(a);
    }

    [[nodiscard]] std::vector<std::vector<element>> const& table() const noexcept {
      return table_;
    }

    [[nodiscard]] std::optional<element> find(std::string_view n) const {
      auto it = std::find(names_.begin(), names_.end(), n);
      if (it == names_.end()) {
        return std::nullopt;
      }
      return static_cast<element>(it - names_.begin());
    }

    [[nodiscard]] element at(std::string_view n) const {
      if (auto a = find(n)) {
        return *a;
      }
      throw InputError("no element named \"" + std::string(n) + "\"");
    }

    [[nodiscard]] std::optional<element> identity() const {
      for (element u = 0; u < size(); ++u) {
        bool ok = true;
        for (element v = 0; v < size() && ok; ++v) {
          ok = mul(u, v) == v && mul(v, u) == v;
        }
        if (ok) {
          return u;
        }
      }
      return std::nullopt;
    }

    [[nodiscard]] bool is_commutative() const {
      for (element a = 0; a < size(); ++a) {
        for (element b = a + 1; b < size(); ++b) {
          if (mul(a, b) != mul(b, a)) {
            return false;
          }
        }
      }
      return true;
    }

    [[nodiscard]] bool is_associative() const {
      for (element a = 0; a < size(); ++a) {
        for (element b = 0; b < size(); ++b) {
          auto const ab = mul(a, b);
          for (element c = 0; c < size(); ++c) {
            if (mul(ab, c) != mul(a, mul(b, c))) {
              return false;
            }
          }
        }
      }
      return true;
    }

    // Semigroup on the listed elements, which must be closed.
    [[nodiscard]] FiniteSemigroup restrict_to(std::vector<element> const& members) const {
      std::map<element, element> index;
      for (auto m : members) {
        index.emplace(m, static_cast<element>(index.size()));
      }
      std::vector<std::string>          names;
      std::vector<std::vector<element>> table;
      for (auto a : members) {
        names.push_back(names_[a]);
        auto& row = table.emplace_back();
        for (auto b : members) {
          auto it = index.find(mul(a, b));
          if (it == index.end()) {
            throw LogicError("restrict_to: subset not closed under multiplication");
          }
          row.push_back(it->second);
        }
      }
      return FiniteSemigroup(std::move(names), std::move(table));
    }

    friend bool operator==(FiniteSemigroup const&, FiniteSemigroup const&) = default;

   private:
    std::vector<std::string>          names_;
    std::vector<std::vector<element>> table_;
  };

  // A finite commutative monoid whose elements are normal-form words over
  // named generators.
  class FiniteMonoid : public FiniteSemigroup {
   public:
    FiniteMonoid() = default;

    // generators[g] is the element of the one-letter word g.
    FiniteMonoid(Alphabet                          alphabet,
                 std::vector<ExpVec>               words,
                 std::vector<std::vector<element>> table,
                 std::vector<element>              generators)
        : FiniteSemigroup(make_names(alphabet, words), std::move(table)),
          alphabet_(std::move(alphabet)),
          words_(std::move(words)),
          generators_(std::move(generators)) {
      if (generators_.size() != alphabet_.size()) {
        throw InputError("generator map does not match the alphabet");
      }
      for (element i = 0; i < words_.size(); ++i) {
        index_.emplace(words_[i], i);
      }
      auto id = index_.find(alphabet_.identity());
      if (id == index_.end()) {
        throw InputError("monoid has no element for the empty word");
      }
      identity_ = id->second;
    }

    [[nodiscard]] element identity() const noexcept {
      return identity_;
    }

    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }

    [[nodiscard]] std::vector<ExpVec> const& words() const noexcept {
      return words_;
    }

    [[nodiscard]] std::vector<element> const& generators() const noexcept {
      return generators_;
    }

    [[nodiscard]] element generator(std::string_view g) const {
      if (auto i = alphabet_.find(g)) {
        return generators_[*i];
      }
      throw InputError("unknown generator \"" + std::string(g) + "\"");
    }

    // Element of an arbitrary word, evaluated through the table.
    [[nodiscard]] element of_word(ExpVec const& w) const {
      if (auto it = index_.find(w); it != index_.end()) {
        return it->second;
      }
      if (w.size() != alphabet_.size()) {
        throw InputError("word width does not match the alphabet");
      }
      element r = identity_;
      for (std::size_t g = 0; g < w.size(); ++g) {
        for (std::uint32_t k = 0; k < w[g]; ++k) {
          r = mul(r, generators_[g]);
        }
      }
      return r;
    }

    [[nodiscard]] element parse(std::string_view word) const {
      return of_word(alphabet_.parse(word));
    }

    [[nodiscard]] element power(element a, std::uint64_t k) const {
      return k == 0 ? identity_ : pow(a, k);
    }

    [[nodiscard]] element product(std::vector<element> const& xs) const {
      element r = identity_;
      for (auto x : xs) {
        r = mul(r, x);
      }
      return r;
    }

   private:
    static std::vector<std::string> make_names(Alphabet const& a, std::vector<ExpVec> const& ws) {
      std::vector<std::string> names;
      for (auto const& w : ws) {
        names.push_back(a.format(w));
      }
      return names;
    }

    Alphabet                  alphabet_;
    std::vector<ExpVec>       words_;
    std::vector<element>      generators_;
    std::map<ExpVec, element> index_;
    element                   identity_ = 0;
  };

  // All normal forms reachable from e by generator multiplication, sorted
  // by the monomial order, with the full multiplication table.
  inline FiniteMonoid enumerate_elements(RewriteSystem const& rws, std::size_t cap = 100'000) {
    auto const&                     alpha = rws.alphabet();
    std::set<ExpVec, MonomialLess>  seen;
    std::vector<ExpVec>             frontier{alpha.identity()};
    seen.insert(alpha.identity());
    while (!frontier.empty()) {
      std::vector<ExpVec> next;
      for (auto const& w : frontier) {
        for (std::size_t g = 0; g < alpha.size(); ++g) {
          auto v = rws.reduce(w * alpha.generator(g));
          if (seen.insert(v).second) {
            if (seen.size() > cap) {
              throw BudgetExceeded("more than " + std::to_string(cap) + " elements");
            }
            next.push_back(std::move(v));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<ExpVec>       words(seen.begin(), seen.end());
    std::map<ExpVec, element> index;
    for (element i = 0; i < words.size(); ++i) {
      index.emplace(words[i], i);
    }
    std::vector<std::vector<element>> table(words.size(), std::vector<element>(words.size()));
    for (element i = 0; i < words.size(); ++i) {
      for (element j = i; j < words.size(); ++j) {
        auto const k = index.at(rws.reduce(words[i] * words[j]));
        table[i][j]  = k;
        table[j][i]  = k;
      }
    }
    std::vector<element> gens;
    for (std::size_t g = 0; g < alpha.size(); ++g) {
      gens.push_back(index.at(rws.reduce(alpha.generator(g))));
    }
    return FiniteMonoid(alpha, std::move(words), std::move(table), std::move(gens));
  }

  // Column of the table for generator g: u -> u * g.
  inline std::vector<element> action_table(FiniteMonoid const& m, std::string_view g) {
    auto const           ge = m.generator(g);
    std::vector<element> col;
    for (element u = 0; u < m.size(); ++u) {
      col.push_back(m.mul(u, ge));
    }
    return col;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reference semigroups
  ////////////////////////////////////////////////////////////////////////

  inline FiniteSemigroup cyclic_group(std::uint32_t n) {
    std::vector<std::string>          names;
    std::vector<std::vector<element>> table(n, std::vector<element>(n));
    for (std::uint32_t i = 0; i < n; ++i) {
      names.push_back(std::to_string(i));
      for (std::uint32_t j = 0; j < n; ++j) {
        table[i][j] = (i + j) % n;
      }
    }
    return FiniteSemigroup(std::move(names), std::move(table));
  }

  // Z2^k with elements named by their nim value.
  inline FiniteSemigroup elementary_abelian_2(std::uint32_t k) {
    std::uint32_t const               n = 1U << k;
    std::vector<std::string>          names;
    std::vector<std::vector<element>> table(n, std::vector<element>(n));
    for (std::uint32_t i = 0; i < n; ++i) {
      names.push_back("*" + std::to_string(i));
      for (std::uint32_t j = 0; j < n; ++j) {
        table[i][j] = i ^ j;
      }
    }
    return FiniteSemigroup(std::move(names), std::move(table));
  }

  inline FiniteSemigroup klein_four() {
    return elementary_abelian_2(2);
  }

  // S with a new zero element listed first.
  inline FiniteSemigroup with_zero(FiniteSemigroup const& s) {
    std::vector<std::string>          names{"0"};
    std::vector<std::vector<element>> table(s.size() + 1, std::vector<element>(s.size() + 1, 0));
    for (element a = 0; a < s.size(); ++a) {
      names.push_back(s.name(a));
      for (element b = 0; b < s.size(); ++b) {
        table[a + 1][b + 1] = s.mul(a, b) + 1;
      }
    }
    return FiniteSemigroup(std::move(names), std::move(table));
  }

  // k nonzero elements, every product zero.
  inline FiniteSemigroup null_semigroup(std::uint32_t k) {
    std::vector<std::string> names{"0"};
    for (std::uint32_t i = 1; i <= k; ++i) {
      names.push_back("n" + std::to_string(i));
    }
    return FiniteSemigroup(std::move(names),
                           std::vector<std::vector<element>>(k + 1, std::vector<element>(k + 1, 0)));
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    // Isomorphism-invariant data per element: cyclic subsemigroup shape,
    // idempotency, rank |uS|.
    inline std::vector<std::uint64_t> element_invariants(FiniteSemigroup const& s) {
      std::vector<std::uint64_t> inv(s.size());
      for (element u = 0; u < s.size(); ++u) {
        std::vector<element> powers{u};
        std::uint64_t        index = 0, period = 0;
        while (true) {
          auto next = s.mul(powers.back(), u);
          auto it   = std::find(powers.begin(), powers.end(), next);
          if (it != powers.end()) {
            index  = static_cast<std::uint64_t>(it - powers.begin());
            period = powers.size() - index;
            break;
          }
          powers.push_back(next);
        }
        std::set<element> image;
        for (element v = 0; v < s.size(); ++v) {
          image.insert(s.mul(u, v));
        }
        inv[u] = (index << 40) | (period << 20) | image.size();
      }
      return inv;
    }

    // A small generating set, chosen greedily in index order.
    inline std::vector<element> generating_set(FiniteSemigroup const& s) {
      std::vector<bool>    in(s.size(), false);
      std::vector<element> gens;
      for (element u = 0; u < s.size(); ++u) {
        if (in[u]) {
          continue;
        }
        gens.push_back(u);
        std::vector<element> queue{u};
        in[u] = true;
        while (!queue.empty()) {
          auto const a = queue.back();
          queue.pop_back();
          for (auto g : gens) {
            if (auto c = s.mul(a, g); !in[c]) {
              in[c] = true;
              queue.push_back(c);
            }
          }
        }
        // products with older members that involve the new generator
        for (bool grew = true; grew;) {
          grew = false;
          for (element x = 0; x < s.size(); ++x) {
            for (element y = 0; y < s.size() && in[x]; ++y) {
              if (in[y] && !in[s.mul(x, y)]) {
                in[s.mul(x, y)] = true;
                grew            = true;
              }
            }
          }
        }
      }
      return gens;
    }

  }  // namespace detail

  // A bijection f with f(a b) = f(a) f(b), found by backtracking over the
  // images of a generating set; mapping[i] is the image of element i.
  inline std::optional<std::vector<element>> is_isomorphic(FiniteSemigroup const& a,
                                                           FiniteSemigroup const& b,
                                                           std::size_t max_size = 64) {
    if (a.size() != b.size()) {
      return std::nullopt;
    }
    if (a.size() > max_size) {
      throw BudgetExceeded("is_isomorphic: order " + std::to_string(a.size())
                           + " exceeds bound " + std::to_string(max_size));
    }
    auto const ia = detail::element_invariants(a);
    auto const ib = detail::element_invariants(b);
    {
      auto sa = ia, sb = ib;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) {
        return std::nullopt;
      }
    }
    auto const           gens = detail::generating_set(a);
    std::size_t const    n    = a.size();
    constexpr element    none = ~element{0};

    // Extends a partial map closed under products; false on conflict.
    auto extend = [&](std::vector<element>& f, std::vector<element>& g) {
      std::vector<element> known;
      for (element u = 0; u < n; ++u) {
        if (f[u] != none) {
          known.push_back(u);
        }
      }
      for (std::size_t i = 0; i < known.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          auto const u = known[i], v = known[j];
          auto const uv = a.mul(u, v), img = b.mul(f[u], f[v]);
          if (f[uv] == none) {
            if (g[img] != none || ia[uv] != ib[img]) {
              return false;
            }
            f[uv]  = img;
            g[img] = uv;
            known.push_back(uv);
          } else if (f[uv] != img) {
            return false;
          }
        }
      }
      return true;
    };

    std::optional<std::vector<element>> found;
    auto search = [&](auto&& self, std::size_t k, std::vector<element> f, std::vector<element> g) -> void {
      if (found) {
        return;
      }
      if (k == gens.size()) {
        if (std::find(f.begin(), f.end(), none) == f.end()) {
          found = std::move(f);
        }
        return;
      }
      auto const u = gens[k];
      if (f[u] != none) {
        self(self, k + 1, std::move(f), std::move(g));
        return;
      }
      for (element c = 0; c < n && !found; ++c) {
        if (g[c] != none || ia[u] != ib[c]) {
          continue;
        }
        auto f2 = f, g2 = g;
        f2[u] = c;
        g2[c] = u;
        if (extend(f2, g2)) {
          self(self, k + 1, std::move(f2), std::move(g2));
        }
      }
    };
    search(search, 0, std::vector<element>(n, none), std::vector<element>(n, none));
    if (found) {
      for (element u = 0; u < n; ++u) {
        for (element v = 0; v < n; ++v) {
          if ((*found)[a.mul(u, v)] != b.mul((*found)[u], (*found)[v])) {
            throw LogicError("is_isomorphic: witness fails verification");
          }
        }
      }
    }
    return found;
  }

}  // namespace misere

#endif  // MISERE_MONOID_HPP_
