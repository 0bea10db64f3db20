#ifndef MISERE_STRUCTURE_HPP_
#define MISERE_STRUCTURE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"
#include "oracle.hpp"
#include "quotient.hpp"

// Ideal and subgroup anatomy of a finite commutative monoid.  Elements are
// indices into the monoid; every set is returned sorted.

namespace misere {

  inline std::vector<element> idempotents(FiniteSemigroup const& s) {
    std::vector<element> out;
    for (element f = 0; f < s.size(); ++f) {
      if (s.mul(f, f) == f) {
        out.push_back(f);
      }
    }
    return out;
  }

  // Pairs (g, f) with g <= f, meaning gf = g.
  inline std::vector<std::pair<element, element>> idempotent_order(FiniteSemigroup const&      s,
                                                                   std::vector<element> const& e) {
    std::vector<std::pair<element, element>> out;
    for (auto g : e) {
      for (auto f : e) {
        if (s.mul(g, f) == g && s.mul(f, g) == g) {
          out.emplace_back(g, f);
        }
      }
    }
    return out;
  }

  // Covering pairs (lower, upper) of the natural order.
  inline std::vector<std::pair<element, element>> hasse_edges(FiniteSemigroup const&      s,
                                                              std::vector<element> const& e) {
    auto const order = idempotent_order(s, e);
    auto       le    = [&](element a, element b) {
      return std::find(order.begin(), order.end(), std::pair(a, b)) != order.end();
    };
    std::vector<std::pair<element, element>> out;
    for (auto [g, f] : order) {
      if (g == f) {
        continue;
      }
      bool covered = true;
      for (auto h : e) {
        if (h != g && h != f && le(g, h) && le(h, f)) {
          covered = false;
        }
      }
      if (covered) {
        out.emplace_back(g, f);
      }
    }
    return out;
  }

  // u | v: uw = v for some w (w = e allowed in a monoid).
  inline bool divides(FiniteSemigroup const& s, element u, element v) {
    if (u == v && s.identity()) {
      return true;
    }
    for (element w = 0; w < s.size(); ++w) {
      if (s.mul(u, w) == v) {
        return true;
      }
    }
    return false;
  }

  // Classes of u tau v (u | v and v | u), ordered by smallest member.
  inline std::vector<std::vector<element>> mutual_divisibility_classes(FiniteSemigroup const& s) {
    auto const                         n = s.size();
    std::vector<std::vector<bool>>     div(n, std::vector<bool>(n, false));
    for (element u = 0; u < n; ++u) {
      for (element v = 0; v < n; ++v) {
        div[u][v] = divides(s, u, v);
      }
    }
    std::vector<std::vector<element>> out;
    std::vector<bool>                 placed(n, false);
    for (element u = 0; u < n; ++u) {
      if (placed[u]) {
        continue;
      }
      auto& cls = out.emplace_back();
      for (element v = u; v < n; ++v) {
        if (div[u][v] && div[v][u]) {
          cls.push_back(v);
          placed[v] = true;
        }
      }
    }
    return out;
  }

  inline std::vector<element> tau_class(FiniteSemigroup const& s, element u) {
    for (auto& c : mutual_divisibility_classes(s)) {
      if (std::find(c.begin(), c.end(), u) != c.end()) {
        return c;
      }
    }
    throw LogicError("tau_class: element out of range");
  }

  inline bool is_group(FiniteSemigroup const& g) {
    auto const id = g.identity();
    if (!id || !g.is_associative()) {
      return false;
    }
    for (element a = 0; a < g.size(); ++a) {
      bool inverse = false;
      for (element b = 0; b < g.size(); ++b) {
        inverse = inverse || g.mul(a, b) == *id;
      }
      if (!inverse) {
        return false;
      }
    }
    return true;
  }

  struct Subgroup {
    element              identity;
    std::vector<element> elements;
    FiniteSemigroup      table;  // induced multiplication, local indices
  };

  // The tau-class of an idempotent, checked to be a group.
  inline Subgroup maximal_subgroup(FiniteSemigroup const& s, element f) {
    if (f >= s.size() || s.mul(f, f) != f) {
      throw InputError("maximal_subgroup: element is not an idempotent");
    }
    Subgroup g{f, tau_class(s, f), {}};
    g.table = s.restrict_to(g.elements);
    if (!is_group(g.table)) {
      throw LogicError("maximal_subgroup: tau-class of " + s.name(f) + " is not a group");
    }
    return g;
  }

  // I S subset of I
  inline bool is_ideal(FiniteSemigroup const& s, std::vector<element> const& set) {
    std::vector<bool> in(s.size(), false);
    for (auto u : set) {
      in[u] = true;
    }
    for (auto u : set) {
      for (element w = 0; w < s.size(); ++w) {
        if (!in[s.mul(u, w)]) {
          return false;
        }
      }
    }
    return true;
  }

  // |uS|
  inline std::vector<std::size_t> ranks(FiniteSemigroup const& s) {
    std::vector<std::size_t> out;
    for (element u = 0; u < s.size(); ++u) {
      std::set<element> image;
      for (element w = 0; w < s.size(); ++w) {
        image.insert(s.mul(u, w));
      }
      out.push_back(image.size());
    }
    return out;
  }

  // Elements of minimal rank: the unique minimal ideal.
  inline std::vector<element> kernel_ideal(FiniteSemigroup const& s) {
    auto const r  = ranks(s);
    auto const lo = *std::min_element(r.begin(), r.end());
    std::vector<element> out;
    for (element u = 0; u < s.size(); ++u) {
      if (r[u] == lo) {
        out.push_back(u);
      }
    }
    if (!is_ideal(s, out)) {
      throw LogicError("kernel_ideal: minimal-rank elements do not form an ideal");
    }
    return out;
  }

  // S_i / S_(i+1): D = S_i \ S_(i+1) with a zero adjoined (listed first).
  struct ReesFactor {
    std::vector<element> elements;  // D, in monoid order
    FiniteSemigroup      table;
    std::string          label;     // "K4+0", "null(k)" or "group(k)"
  };

  struct PrincipalSeries {
    std::vector<std::vector<element>> chain;  // S_1 = S, ..., S_m; S_(m+1) is empty
    std::vector<ReesFactor>           factors;
  };

  inline ReesFactor rees_factor(FiniteSemigroup const& s, std::vector<element> d) {
    std::sort(d.begin(), d.end());
    std::vector<std::string>          names{"0"};
    std::vector<std::vector<element>> table(d.size() + 1, std::vector<element>(d.size() + 1, 0));
    auto local = [&](element u) -> element {
      auto it = std::find(d.begin(), d.end(), u);
      return it == d.end() ? 0 : static_cast<element>(it - d.begin()) + 1;
    };
    bool null = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      names.push_back(s.name(d[i]));
      for (std::size_t j = 0; j < d.size(); ++j) {
        table[i + 1][j + 1] = local(s.mul(d[i], d[j]));
        null                = null && table[i + 1][j + 1] == 0;
      }
    }
    ReesFactor f{d, FiniteSemigroup(std::move(names), std::move(table)), {}};
    auto const k = std::to_string(d.size());
    if (null) {
      f.label = "null(" + k + ")";
    } else {
      auto const inner = s.restrict_to(d);
      if (!is_group(inner)) {
        throw LogicError("Rees factor is neither null nor a group with zero");
      }
      f.label = is_isomorphic(inner, klein_four()) ? "K4+0" : "group(" + k + ")";
    }
    return f;
  }

  // Peel off one tau-class at a time: a class no other remaining class
  // strictly divides into leaves an ideal behind.  Ties go to the class
  // holding the smallest element.
  inline PrincipalSeries principal_series(FiniteSemigroup const& s) {
    PrincipalSeries ps;
    auto            classes = mutual_divisibility_classes(s);
    std::vector<element> cur(s.size());
    for (element u = 0; u < s.size(); ++u) {
      cur[u] = u;
    }
    while (!classes.empty()) {
      ps.chain.push_back(cur);
      std::size_t pick = classes.size();
      for (std::size_t i = 0; i < classes.size() && pick == classes.size(); ++i) {
        bool top = true;
        for (std::size_t j = 0; j < classes.size(); ++j) {
          if (j != i && divides(s, classes[j][0], classes[i][0])) {
            top = false;
          }
        }
        if (top) {
          pick = i;
        }
      }
      if (pick == classes.size()) {
        throw LogicError("principal_series: no maximal class");
      }
      auto const d = classes[pick];
      classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(pick));
      std::erase_if(cur, [&](element u) { return std::find(d.begin(), d.end(), u) != d.end(); });
      if (!cur.empty() && !is_ideal(s, cur)) {
        throw LogicError("principal_series: complement is not an ideal");
      }
      ps.factors.push_back(rees_factor(s, d));
    }
    return ps;
  }

  // A maximal subgroup that behaves like misere Nim: an elementary abelian
  // 2-group on which u -> g+(representative of u) is injective and carries
  // products to nim-sums.  Element u then corresponds to the Nim position
  // *g+(u), with *2+*2 standing in for 0.
  struct TameIsland {
    element                    identity;
    std::vector<element>       elements;
    std::vector<std::uint32_t> nim_values;   // g+ per element
    std::vector<GenusSymbol>   nim_genera;   // genus of the matching Nim position
  };

  inline std::vector<GameTree> nim_position_for(std::uint32_t g) {
    if (g == 0) {
      return {GameTree::nim(2), GameTree::nim(2)};
    }
    return {GameTree::nim(g)};
  }

  inline std::vector<TameIsland> tame_islands(QuotientAnalysis const& qa) {
    auto const&          m    = qa.monoid;
    auto const           reps = representatives(qa);
    auto const           gseq = grundy_sequence(qa.code, qa.phi.n());
    auto                 gplus = [&](element u) -> std::optional<std::uint32_t> {
      if (!reps[u]) {
        return std::nullopt;
      }
      std::uint32_t g = 0;
      for (auto h : reps[u]->heaps()) {
        g ^= gseq[h];
      }
      return g;
    };
    std::vector<TameIsland> out;
    for (auto f : idempotents(m)) {
      auto const grp = maximal_subgroup(m, f);
      TameIsland isl{f, grp.elements, {}, {}};
      bool       ok = true;
      for (auto u : grp.elements) {
        auto g = gplus(u);
        ok     = ok && g && m.mul(u, u) == f;
        if (g) {
          isl.nim_values.push_back(*g);
        }
      }
      if (!ok) {
        continue;
      }
      std::set<std::uint32_t> distinct(isl.nim_values.begin(), isl.nim_values.end());
      ok = distinct.size() == grp.elements.size();
      for (std::size_t i = 0; ok && i < grp.elements.size(); ++i) {
        for (std::size_t j = 0; ok && j < grp.elements.size(); ++j) {
          auto const prod = m.mul(grp.elements[i], grp.elements[j]);
          auto const k    = static_cast<std::size_t>(
              std::find(grp.elements.begin(), grp.elements.end(), prod) - grp.elements.begin());
          ok = isl.nim_values[k] == (isl.nim_values[i] ^ isl.nim_values[j]);
        }
      }
      if (!ok) {
        continue;
      }
      TreeSolver solver;
      for (auto g : isl.nim_values) {
        isl.nim_genera.push_back(solver.genus(nim_position_for(g)));
      }
      out.push_back(std::move(isl));
    }
    return out;
  }

}  // namespace misere

#endif  // MISERE_STRUCTURE_HPP_
