#ifndef MISERE_VERIFIER_HPP_
#define MISERE_VERIFIER_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"
#include "octal.hpp"
#include "quotient.hpp"

namespace misere {

  // (Phi(h_f), Phi(t)) for a legal move h_f -> t, with the first such move.
  struct MovePair {
    element   lhs;
    element   rhs;
    heap_size f;
    Position  t;

    friend bool operator==(MovePair const&, MovePair const&) = default;
  };

  struct Translate {
    element  basis;
    MovePair pair;
    element  from;
    element  to;

    friend bool operator==(Translate const&, Translate const&) = default;
  };

  // A solution (U, s) of omega = s Phi(U), s in S(U), lacking a winning
  // translate.  u lists the heaps of U; for the closure engine it is a
  // witness position instead and s is its Phi value.
  struct NPFailure {
    element                omega;
    std::vector<heap_size> u;
    element                s;

    friend auto operator<=>(NPFailure const&, NPFailure const&) = default;
  };

  enum class VerifierEngine { automatic, naive, heap_class, minimal_class, closure };

  inline std::string to_string(VerifierEngine e) {
    switch (e) {
      case VerifierEngine::automatic:
        return "automatic";
      case VerifierEngine::naive:
        return "naive";
      case VerifierEngine::heap_class:
        return "heap_class";
      case VerifierEngine::minimal_class:
        return "minimal_class";
      case VerifierEngine::closure:
        return "closure";
    }
    return "?";
  }

  inline VerifierEngine parse_engine(std::string_view s) {
    for (auto e : {VerifierEngine::automatic, VerifierEngine::naive, VerifierEngine::heap_class,
                   VerifierEngine::minimal_class, VerifierEngine::closure}) {
      if (to_string(e) == s) {
        return e;
      }
    }
    throw InputError("unknown verifier engine \"" + std::string(s) + "\"");
  }

  struct VerifierConfig {
    VerifierEngine engine       = VerifierEngine::automatic;
    std::uint64_t  subset_limit = 50'000'000;  // U subsets (naive) or class multisets
    std::uint64_t  state_limit  = 20'000'000;  // closure engine states
  };

  struct VerificationReport {
    heap_size                              n = 0;
    std::string                            engine;
    std::vector<Translate>                 pp_violations;
    std::vector<NPFailure>                 np_failures;
    // positions without moves whose asserted outcome is wrong
    std::vector<NPFailure>                 terminal_violations;
    std::map<std::string, std::uint64_t>   stats;
    std::map<element, std::uint64_t>       cases_per_omega;
    bool                                   passed = false;
  };

  ////////////////////////////////////////////////////////////////////////
  // Move pairs and translates
  ////////////////////////////////////////////////////////////////////////

  struct HeapMoves {
    element                                    phi;
    std::vector<std::pair<Position, element>>  moves;    // (t, Phi(t))
    std::vector<element>                       targets;  // distinct Phi(t)
  };

  inline std::vector<HeapMoves> heap_moves(QuotientAnalysis const& qa, heap_size n) {
    if (n > qa.phi.n() && !qa.certified_period) {
      throw RangeError("heap bound " + std::to_string(n) + " exceeds the analysed range "
                       + std::to_string(qa.phi.n()));
    }
    std::vector<HeapMoves> out;
    for (heap_size f = 1; f <= n; ++f) {
      HeapMoves hm;
      hm.phi = phi_of_heap(qa, f);
      for (auto const& t : moves_from_heap(qa.code, f)) {
        auto const v = phi_of_position(qa, t);
        hm.moves.emplace_back(t, v);
        hm.targets.push_back(v);
      }
      std::sort(hm.targets.begin(), hm.targets.end());
      hm.targets.erase(std::unique(hm.targets.begin(), hm.targets.end()), hm.targets.end());
      out.push_back(std::move(hm));
    }
    return out;
  }

  // M_n, one entry per distinct pair, witnessed by its first move.
  inline std::vector<MovePair> move_pairs(QuotientAnalysis const& qa, heap_size n) {
    std::vector<MovePair>                 out;
    std::set<std::pair<element, element>> seen;
    auto const                            hm = heap_moves(qa, n);
    for (heap_size f = 1; f <= n; ++f) {
      for (auto const& [t, v] : hm[f - 1].moves) {
        if (seen.emplace(hm[f - 1].phi, v).second) {
          out.push_back({hm[f - 1].phi, v, f, t});
        }
      }
    }
    return out;
  }

  // Every move h_f -> t with f <= n translated by one basis element.
  inline std::vector<Translate> translate_table(QuotientAnalysis const& qa,
                                                heap_size               n,
                                                element                 basis) {
    std::vector<Translate> out;
    auto const             hm = heap_moves(qa, n);
    for (heap_size f = 1; f <= n; ++f) {
      for (auto const& [t, v] : hm[f - 1].moves) {
        MovePair mp{hm[f - 1].phi, v, f, t};
        out.push_back({basis, mp, qa.monoid.mul(basis, mp.lhs), qa.monoid.mul(basis, mp.rhs)});
      }
    }
    return out;
  }

  // T_n as a set of (from, to) pairs.
  inline std::set<std::pair<element, element>> translate_set(QuotientAnalysis const& qa,
                                                             heap_size               n) {
    std::set<std::pair<element, element>> out;
    for (auto const& mp : move_pairs(qa, n)) {
      for (element u = 0; u < qa.monoid.size(); ++u) {
        out.emplace(qa.monoid.mul(u, mp.lhs), qa.monoid.mul(u, mp.rhs));
      }
    }
    return out;
  }

  // Translates (omega, P) over all bases and moves.
  inline std::vector<Translate> translates_to_p(QuotientAnalysis const& qa,
                                                heap_size               n,
                                                element                 omega) {
    std::vector<Translate> out;
    for (element u = 0; u < qa.monoid.size(); ++u) {
      for (auto const& tr : translate_table(qa, n, u)) {
        if (tr.from == omega && qa.is_p(tr.to)) {
          out.push_back(tr);
        }
      }
    }
    return out;
  }

  // Translates of shape (P, P); empty means no P position moves to a P
  // position within heap size n.
  inline std::vector<Translate> check_no_PP(QuotientAnalysis const& qa, heap_size n) {
    std::vector<Translate> out;
    for (auto const& mp : move_pairs(qa, n)) {
      for (element u = 0; u < qa.monoid.size(); ++u) {
        auto const from = qa.monoid.mul(u, mp.lhs);
        auto const to   = qa.monoid.mul(u, mp.rhs);
        if (qa.is_p(from) && qa.is_p(to)) {
          out.push_back({u, mp, from, to});
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quantities of the N -> P check for an explicit heap set U
  ////////////////////////////////////////////////////////////////////////

  // S(U): generated by e and Phi(h) for h in U.
  inline std::vector<element> subsemigroup(QuotientAnalysis const&       qa,
                                           std::vector<heap_size> const& u) {
    auto const&          m = qa.monoid;
    std::vector<bool>    in(m.size(), false);
    std::vector<element> queue{m.identity()};
    in[m.identity()] = true;
    while (!queue.empty()) {
      auto a = queue.back();
      queue.pop_back();
      for (auto h : u) {
        if (auto c = m.mul(a, phi_of_heap(qa, h)); !in[c]) {
          in[c] = true;
          queue.push_back(c);
        }
      }
    }
    std::vector<element> out;
    for (element a = 0; a < m.size(); ++a) {
      if (in[a]) {
        out.push_back(a);
      }
    }
    return out;
  }

  inline element phi_of_set(QuotientAnalysis const& qa, std::vector<heap_size> const& u) {
    element r = qa.monoid.identity();
    for (auto h : u) {
      r = qa.monoid.mul(r, phi_of_heap(qa, h));
    }
    return r;
  }

  // All s in Q with omega = s Phi(U).
  inline std::vector<element> solutions(QuotientAnalysis const&       qa,
                                        element                       omega,
                                        std::vector<heap_size> const& u) {
    auto const           pu = phi_of_set(qa, u);
    std::vector<element> out;
    for (element s = 0; s < qa.monoid.size(); ++s) {
      if (qa.monoid.mul(s, pu) == omega) {
        out.push_back(s);
      }
    }
    return out;
  }

  struct WinningMove {
    heap_size heap;    // h_i in U
    Position  t;       // h_i -> t
    element   from;    // s Phi(U)
    element   target;  // s Phi(t) Phi(d P(U) / d h_i)
  };

  // Moves h_i -> t, h_i in U, whose translate (s Phi(U), ...) lands in P.
  inline std::vector<WinningMove> winning_moves(QuotientAnalysis const&       qa,
                                                std::vector<heap_size> const& u,
                                                element                       s) {
    auto const&              m = qa.monoid;
    std::vector<WinningMove> out;
    auto const               from = m.mul(s, phi_of_set(qa, u));
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto rest = u;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      auto const base = m.mul(s, phi_of_set(qa, rest));
      for (auto const& t : moves_from_heap(qa.code, u[i])) {
        auto const target = m.mul(base, phi_of_position(qa, t));
        if (qa.is_p(target)) {
          out.push_back({u[i], t, from, target});
        }
      }
    }
    return out;
  }

  // The reported move: the winner whose target comes last in element order,
  // then the smallest heap, then the smallest t.
  inline std::optional<WinningMove> choose_winning_move(QuotientAnalysis const&       qa,
                                                        std::vector<heap_size> const& u,
                                                        element                       s) {
    auto all = winning_moves(qa, u, s);
    if (all.empty()) {
      return std::nullopt;
    }
    return *std::min_element(all.begin(), all.end(), [](auto const& a, auto const& b) {
      return std::tuple(b.target, a.heap, a.t) < std::tuple(a.target, b.heap, b.t);
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // N -> P engines
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    using bits = std::uint64_t;

    inline bool terminal_ok(QuotientAnalysis const& qa, element omega) {
      return qa.play == PlayConvention::misere ? !qa.is_p(omega) : qa.is_p(omega);
    }

    // {s g^k : s in set, k >= 0}
    inline bits close_with(FiniteSemigroup const& m, bits set, element g) {
      for (bits frontier = set; frontier != 0;) {
        bits next = 0;
        for (bits f = frontier; f != 0; f &= f - 1) {
          auto const s = static_cast<element>(std::countr_zero(f));
          auto const c = m.mul(s, g);
          if ((set >> c & 1) == 0) {
            next |= bits{1} << c;
          }
        }
        set |= next;
        frontier = next;
      }
      return set;
    }

    struct Sink {
      QuotientAnalysis const& qa;
      VerificationReport&     report;
      std::optional<element>  only;  // restrict to one omega

      bool wanted(element omega) const {
        return !only || *only == omega;
      }
    };

    // One (U, s) case.  rest[i] = Phi(U minus one copy of the i-th heap).
    inline void check_case(Sink&                                     sink,
                           std::vector<heap_size> const&             u_heaps,
                           std::vector<HeapMoves const*> const&      u_moves,
                           std::vector<element> const&               rest,
                           element                                   phi_u,
                           element                                   s) {
      auto const& m     = sink.qa.monoid;
      auto const  omega = m.mul(s, phi_u);
      if (!sink.wanted(omega)) {
        return;
      }
      bool live = false;
      for (auto const* hm : u_moves) {
        live = live || !hm->targets.empty();
      }
      if (!live) {
        if (!terminal_ok(sink.qa, omega)) {
          sink.report.terminal_violations.push_back({omega, u_heaps, s});
        }
        return;
      }
      if (sink.qa.is_p(omega)) {
        return;
      }
      ++sink.report.cases_per_omega[omega];
      for (std::size_t i = 0; i < u_moves.size(); ++i) {
        auto const base = m.mul(s, rest[i]);
        for (auto t : u_moves[i]->targets) {
          if (sink.qa.is_p(m.mul(base, t))) {
            return;
          }
        }
      }
      sink.report.np_failures.push_back({omega, u_heaps, s});
    }

    // All nonempty U subset of H_n.
    inline void naive_engine(Sink& sink, std::vector<HeapMoves> const& hm, VerifierConfig const& cfg) {
      auto const& m = sink.qa.monoid;
      auto const  n = hm.size();
      if (m.size() > 64 || n > 30) {
        throw BudgetExceeded("naive engine supports at most 64 elements and 30 heaps");
      }
      if ((std::uint64_t{1} << n) > cfg.subset_limit) {
        throw BudgetExceeded("naive engine: 2^" + std::to_string(n) + " subsets exceed limit");
      }
      std::vector<bits>    s_of(std::size_t{1} << n);
      std::vector<element> p_of(std::size_t{1} << n);
      s_of[0] = bits{1} << m.identity();
      p_of[0] = m.identity();
      std::vector<heap_size>         u_heaps;
      std::vector<HeapMoves const*>  u_moves;
      std::vector<element>           rest;
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        auto const top  = static_cast<std::size_t>(63 - std::countl_zero(mask));
        auto const prev = mask ^ (std::uint64_t{1} << top);
        s_of[mask]      = close_with(m, s_of[prev], hm[top].phi);
        p_of[mask]      = m.mul(p_of[prev], hm[top].phi);
        u_heaps.clear();
        u_moves.clear();
        for (auto b = mask; b != 0; b &= b - 1) {
          auto const i = static_cast<std::size_t>(std::countr_zero(b));
          u_heaps.push_back(static_cast<heap_size>(i + 1));
          u_moves.push_back(&hm[i]);
        }
        rest.assign(u_heaps.size(), m.identity());
        for (std::size_t i = 0; i < u_heaps.size(); ++i) {
          for (std::size_t j = 0; j < u_heaps.size(); ++j) {
            if (i != j) {
              rest[i] = m.mul(rest[i], u_moves[j]->phi);
            }
          }
        }
        for (auto b = s_of[mask]; b != 0; b &= b - 1) {
          check_case(sink, u_heaps, u_moves, rest, p_of[mask],
                     static_cast<element>(std::countr_zero(b)));
        }
      }
      sink.report.stats["subsets"] = (std::uint64_t{1} << n) - 1;
    }

    // Heaps sharing Phi value and move targets are interchangeable in U.
    struct HeapClass {
      element                phi;
      std::vector<element>   targets;
      std::vector<heap_size> members;
      std::uint32_t          cap = 0;  // multiplicities 1..cap are distinct
      std::uint32_t          mu  = 0;  // powers phi^k periodic for k >= mu
      std::uint32_t          lambda = 1;
    };

    inline std::vector<HeapClass> heap_classes(QuotientAnalysis const& qa,
                                               std::vector<HeapMoves> const& hm) {
      std::map<std::pair<element, std::vector<element>>, std::size_t> index;
      std::vector<HeapClass>                                         out;
      for (heap_size f = 1; f <= hm.size(); ++f) {
        auto key = std::make_pair(hm[f - 1].phi, hm[f - 1].targets);
        auto it  = index.find(key);
        if (it == index.end()) {
          it = index.emplace(key, out.size()).first;
          out.push_back({key.first, key.second, {}, 0, 0, 1});
        }
        out[it->second].members.push_back(f);
      }
      auto const& m = qa.monoid;
      for (auto& c : out) {
        std::vector<element> powers{m.identity()};
        while (true) {
          auto next = m.mul(powers.back(), c.phi);
          auto it   = std::find(powers.begin(), powers.end(), next);
          if (it != powers.end()) {
            c.mu     = static_cast<std::uint32_t>(it - powers.begin());
            c.lambda = static_cast<std::uint32_t>(powers.size()) - c.mu;
            break;
          }
          powers.push_back(next);
        }
        // (phi^m, phi^(m-1)) repeats with period lambda once m - 1 >= mu
        c.cap = std::min<std::uint32_t>(static_cast<std::uint32_t>(c.members.size()),
                                        c.mu + c.lambda);
      }
      return out;
    }

    // Multiplicity m reduced to the smallest equivalent one in 1..cap.
    inline std::uint32_t canonical_multiplicity(HeapClass const& c, std::uint32_t m) {
      if (m <= c.mu + c.lambda) {
        return m;
      }
      return c.mu + 1 + (m - c.mu - 1) % c.lambda;
    }

    // U as a multiset of heap classes.
    inline void heap_class_engine(Sink& sink, std::vector<HeapMoves> const& hm, VerifierConfig const& cfg) {
      auto const& m = sink.qa.monoid;
      if (m.size() > 64) {
        throw BudgetExceeded("heap-class engine supports at most 64 elements");
      }
      auto const    classes = heap_classes(sink.qa, hm);
      std::uint64_t total   = 1;
      for (auto const& c : classes) {
        total *= c.cap + 1;
        if (total > cfg.subset_limit) {
          throw BudgetExceeded("heap-class engine: class multisets exceed limit");
        }
      }
      sink.report.stats["heap_classes"] = classes.size();
      sink.report.stats["subsets"]      = total - 1;
      std::vector<std::uint32_t>     mult(classes.size(), 0);
      std::vector<heap_size>         u_heaps;
      std::vector<HeapMoves const*>  u_moves;
      std::vector<element>           rest;
      auto leaf = [&](bits s_set, element phi_u) {
        u_heaps.clear();
        u_moves.clear();
        std::vector<std::size_t> owner;
        for (std::size_t c = 0; c < classes.size(); ++c) {
          for (std::uint32_t k = 0; k < mult[c]; ++k) {
            u_heaps.push_back(classes[c].members[k]);
            u_moves.push_back(&hm[classes[c].members[k] - 1]);
            owner.push_back(c);
          }
        }
        std::sort(u_heaps.begin(), u_heaps.end());
        u_moves.clear();
        for (auto h : u_heaps) {
          u_moves.push_back(&hm[h - 1]);
        }
        rest.assign(u_heaps.size(), m.identity());
        for (std::size_t i = 0; i < u_heaps.size(); ++i) {
          for (std::size_t j = 0; j < u_heaps.size(); ++j) {
            if (i != j) {
              rest[i] = m.mul(rest[i], u_moves[j]->phi);
            }
          }
        }
        for (auto b = s_set; b != 0; b &= b - 1) {
          check_case(sink, u_heaps, u_moves, rest, phi_u, static_cast<element>(std::countr_zero(b)));
        }
      };
      auto rec = [&](auto&& self, std::size_t c, bits s_set, element phi_u, bool any) -> void {
        if (c == classes.size()) {
          if (any) {
            leaf(s_set, phi_u);
          }
          return;
        }
        mult[c] = 0;
        self(self, c + 1, s_set, phi_u, any);
        auto const s_with = close_with(m, s_set, classes[c].phi);
        auto       p      = phi_u;
        for (std::uint32_t k = 1; k <= classes[c].cap; ++k) {
          p       = m.mul(p, classes[c].phi);
          mult[c] = k;
          self(self, c + 1, s_with, p, true);
        }
        mult[c] = 0;
      };
      rec(rec, 0, bits{1} << m.identity(), m.identity(), false);
    }

    // Distinct Phi values among the classes, and for each value the classes
    // whose target sets are minimal under inclusion.  When hunting for an
    // N -> P failure, a heap of a non-minimal class can always be swapped
    // for one of a minimal class with the same value: Phi and every
    // Phi(p / h) are unchanged and only moves are lost.  Mixing two classes
    // of one value likewise only adds moves.
    struct ValueClasses {
      std::vector<element>                  values;
      std::vector<std::vector<std::size_t>> minimal;
    };

    inline ValueClasses minimal_classes(std::vector<HeapClass> const& classes) {
      ValueClasses out;
      auto&        values  = out.values;
      auto&        minimal = out.minimal;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        auto it = std::find(values.begin(), values.end(), classes[c].phi);
        if (it == values.end()) {
          values.push_back(classes[c].phi);
          minimal.emplace_back();
          it = values.end() - 1;
        }
        auto& mins = minimal[static_cast<std::size_t>(it - values.begin())];
        auto  subset = [&](std::size_t a, std::size_t b) {
          return std::includes(classes[b].targets.begin(), classes[b].targets.end(),
                               classes[a].targets.begin(), classes[a].targets.end());
        };
        bool dominated = false;
        for (auto d : mins) {
          dominated = dominated || subset(d, c);
        }
        if (!dominated) {
          std::erase_if(mins, [&](std::size_t d) { return subset(c, d); });
          mins.push_back(c);
        }
      }
      return out;
    }

    // The N -> P check over sets U of heap classes, at most one minimal class per
    // value; extra copies of heaps in U are absorbed by s in S(U).  Exact
    // for N -> P.
    inline void minimal_class_engine(Sink& sink, std::vector<HeapMoves> const& hm, VerifierConfig const& cfg) {
      auto const& m = sink.qa.monoid;
      if (m.size() > 64) {
        throw BudgetExceeded("minimal-class engine supports at most 64 elements");
      }
      auto const    classes   = heap_classes(sink.qa, hm);
      auto const    vc        = minimal_classes(classes);
      auto const    V         = vc.values.size();
      std::uint64_t total     = 1;
      for (auto const& mins : vc.minimal) {
        total *= 1 + mins.size();
        if (total > cfg.subset_limit) {
          throw BudgetExceeded("minimal-class engine: class sets exceed limit");
        }
      }
      sink.report.stats["heap_classes"] = classes.size();
      sink.report.stats["subsets"]      = total - 1;
      std::vector<std::size_t>       chosen;  // class indices in U
      std::vector<heap_size>         u_heaps;
      std::vector<HeapMoves const*>  u_moves;
      std::vector<element>           rest;
      auto leaf = [&](bits s_set, element phi_u) {
        u_heaps.clear();
        for (auto c : chosen) {
          u_heaps.push_back(classes[c].members.front());
        }
        std::sort(u_heaps.begin(), u_heaps.end());
        u_moves.clear();
        for (auto h : u_heaps) {
          u_moves.push_back(&hm[h - 1]);
        }
        rest.assign(u_heaps.size(), m.identity());
        for (std::size_t i = 0; i < u_heaps.size(); ++i) {
          for (std::size_t j = 0; j < u_heaps.size(); ++j) {
            if (i != j) {
              rest[i] = m.mul(rest[i], u_moves[j]->phi);
            }
          }
        }
        for (auto b = s_set; b != 0; b &= b - 1) {
          check_case(sink, u_heaps, u_moves, rest, phi_u, static_cast<element>(std::countr_zero(b)));
        }
      };
      auto rec = [&](auto&& self, std::size_t v, bits s_set, element phi_u) -> void {
        if (v == V) {
          if (!chosen.empty()) {
            leaf(s_set, phi_u);
          }
          return;
        }
        self(self, v + 1, s_set, phi_u);
        auto const s_with = close_with(m, s_set, vc.values[v]);
        auto const p      = m.mul(phi_u, vc.values[v]);
        for (auto c : vc.minimal[v]) {
          chosen.push_back(c);
          self(self, v + 1, s_with, p);
          chosen.pop_back();
        }
      };
      rec(rec, 0, bits{1} << m.identity(), m.identity());
    }

    // Abstract closure over positions.  A position is summarised by its
    // Phi value and, for each Phi value v present, Y(v) = Phi(position with
    // one v-heap removed) together with the (minimal) class used for v.
    // Exact for N -> P; P -> P is left to the translate check.
    inline void closure_engine(Sink& sink, std::vector<HeapMoves> const& hm, VerifierConfig const& cfg) {
      auto const& m       = sink.qa.monoid;
      auto const  classes = heap_classes(sink.qa, hm);
      auto const  vc      = minimal_classes(classes);
      auto const& values  = vc.values;
      auto const& minimal = vc.minimal;
      auto const V = values.size();
      // state layout: [phi, cls_0, y_0, cls_1, y_1, ...], cls = class + 1 or 0
      using word = std::uint16_t;
      if (m.size() > 0xffff || classes.size() >= 0xffff) {
        throw BudgetExceeded("closure engine supports at most 65535 elements and heap classes");
      }
      std::size_t const width = 1 + 2 * V;
      // states are stored back to back in one pool; the hash set holds indices
      std::vector<word>          pool;
      std::vector<std::uint32_t> parent;
      std::vector<heap_size>     via;
      auto const at = [&](std::size_t i) { return pool.data() + i * width; };
      std::vector<word> scratch(width);
      auto const hash = [&](std::uint32_t i) {
        word const* s = i == UINT32_MAX ? scratch.data() : at(i);
        return std::hash<std::string_view>{}(
            std::string_view(reinterpret_cast<char const*>(s), width * sizeof(word)));
      };
      auto const eq = [&](std::uint32_t a, std::uint32_t b) {
        word const* x = a == UINT32_MAX ? scratch.data() : at(a);
        word const* y = b == UINT32_MAX ? scratch.data() : at(b);
        return std::equal(x, x + width, y);
      };
      std::unordered_set<std::uint32_t, decltype(hash), decltype(eq)> seen(1024, hash, eq);
      pool.assign(width, 0);
      pool[0] = static_cast<word>(m.identity());
      parent.push_back(0);
      via.push_back(0);
      seen.insert(0);
      auto witness = [&](std::size_t i) {
        std::vector<heap_size> heaps;
        for (; i != 0; i = parent[i]) {
          heaps.push_back(via[i]);
        }
        std::sort(heaps.begin(), heaps.end());
        return heaps;
      };
      if (sink.wanted(m.identity()) && !terminal_ok(sink.qa, m.identity())) {
        sink.report.terminal_violations.push_back({m.identity(), {}, m.identity()});
      }
      std::vector<word> cur(width);
      for (std::size_t i = 0; i < parent.size(); ++i) {
        std::copy(at(i), at(i) + width, cur.begin());
        if (i != 0 && sink.wanted(cur[0])) {
          bool live = false, wins = false;
          for (std::size_t v = 0; v < V; ++v) {
            if (cur[1 + 2 * v] == 0) {
              continue;
            }
            auto const& c = classes[cur[1 + 2 * v] - 1u];
            live          = live || !c.targets.empty();
            for (auto t : c.targets) {
              wins = wins || sink.qa.is_p(m.mul(cur[2 + 2 * v], t));
            }
          }
          if (!live) {
            if (!terminal_ok(sink.qa, cur[0])) {
              sink.report.terminal_violations.push_back({cur[0], witness(i), cur[0]});
            }
          } else if (!sink.qa.is_p(cur[0])) {
            ++sink.report.cases_per_omega[cur[0]];
            if (!wins) {
              sink.report.np_failures.push_back({cur[0], witness(i), cur[0]});
            }
          }
        }
        for (std::size_t v = 0; v < V; ++v) {
          for (auto c : minimal[v]) {
            if (cur[1 + 2 * v] != 0 && cur[1 + 2 * v] != c + 1) {
              continue;
            }
            scratch    = cur;
            scratch[0] = static_cast<word>(m.mul(cur[0], values[v]));
            for (std::size_t w = 0; w < V; ++w) {
              if (cur[1 + 2 * w] != 0) {
                scratch[2 + 2 * w] = static_cast<word>(m.mul(cur[2 + 2 * w], values[v]));
              }
            }
            scratch[1 + 2 * v] = static_cast<word>(c + 1);
            scratch[2 + 2 * v] = cur[0];
            if (seen.contains(UINT32_MAX)) {
              continue;
            }
            if (parent.size() >= cfg.state_limit) {
              throw BudgetExceeded("closure engine exceeded " + std::to_string(cfg.state_limit)
                                   + " states");
            }
            pool.insert(pool.end(), scratch.begin(), scratch.end());
            parent.push_back(static_cast<std::uint32_t>(i));
            via.push_back(classes[c].members.front());
            seen.insert(static_cast<std::uint32_t>(parent.size() - 1));
          }
        }
      }
      sink.report.stats["heap_classes"] = classes.size();
      sink.report.stats["states"]       = parent.size();
    }

    inline VerifierEngine pick_engine(QuotientAnalysis const& qa, heap_size n, VerifierConfig const& cfg) {
      if (cfg.engine != VerifierEngine::automatic) {
        return cfg.engine;
      }
      if (qa.monoid.size() > 64) {
        return VerifierEngine::closure;
      }
      auto const    vc    = minimal_classes(heap_classes(qa, heap_moves(qa, n)));
      std::uint64_t total = 1;
      for (auto const& mins : vc.minimal) {
        total *= 1 + mins.size();
        if (total > cfg.subset_limit) {
          return VerifierEngine::closure;
        }
      }
      return VerifierEngine::minimal_class;
    }

    inline void run_engine(Sink& sink, heap_size n, VerifierEngine engine, VerifierConfig const& cfg) {
      auto const hm = heap_moves(sink.qa, n);
      switch (engine) {
        case VerifierEngine::naive:
          naive_engine(sink, hm, cfg);
          break;
        case VerifierEngine::heap_class:
          heap_class_engine(sink, hm, cfg);
          break;
        case VerifierEngine::minimal_class:
          minimal_class_engine(sink, hm, cfg);
          break;
        case VerifierEngine::closure:
        case VerifierEngine::automatic:
          closure_engine(sink, hm, cfg);
          break;
      }
      auto& f = sink.report.np_failures;
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      auto& t = sink.report.terminal_violations;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }

  }  // namespace detail

  // Failing (U, s) solutions for one asserted-N element omega.
  inline std::vector<NPFailure> check_N_to_P(QuotientAnalysis const& qa,
                                             heap_size               n,
                                             element                 omega,
                                             VerifierConfig const&   cfg = {}) {
    if (qa.is_p(omega)) {
      throw InputError("element " + qa.monoid.name(omega) + " is asserted P, not N");
    }
    VerificationReport report;
    detail::Sink       sink{qa, report, omega};
    detail::run_engine(sink, n, detail::pick_engine(qa, n, cfg), cfg);
    return report.np_failures;
  }

  // N -> P failures of the naive engine rewritten in heap-class form, so
  // they can be compared with the heap-class engine's.
  inline std::vector<NPFailure> canonical_failures(QuotientAnalysis const&       qa,
                                                   heap_size                     n,
                                                   std::vector<NPFailure> const& failures) {
    auto const classes = detail::heap_classes(qa, heap_moves(qa, n));
    std::vector<NPFailure> out;
    for (auto f : failures) {
      std::vector<heap_size> u;
      for (auto const& c : classes) {
        std::uint32_t k = 0;
        for (auto h : f.u) {
          k += std::find(c.members.begin(), c.members.end(), h) != c.members.end() ? 1 : 0;
        }
        k = detail::canonical_multiplicity(c, k);
        u.insert(u.end(), c.members.begin(), c.members.begin() + k);
      }
      std::sort(u.begin(), u.end());
      f.u = std::move(u);
      out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  inline VerificationReport verify_to_heap(QuotientAnalysis const& qa,
                                           heap_size               n,
                                           VerifierConfig const&   cfg = {}) {
    VerificationReport report;
    report.n             = n;
    auto const engine    = detail::pick_engine(qa, n, cfg);
    report.engine        = to_string(engine);
    report.pp_violations = check_no_PP(qa, n);
    detail::Sink sink{qa, report, std::nullopt};
    detail::run_engine(sink, n, engine, cfg);
    report.stats["move_pairs"] = move_pairs(qa, n).size();
    report.passed = report.pp_violations.empty() && report.np_failures.empty()
                    && report.terminal_violations.empty();
    return report;
  }

  // Periodicity: with Phi(h_(r+p)) = Phi(h_r) for r >= r0 and correctness up to
  // heap size 2 r0 + p + P - 1, the analysis is correct for every heap size.
  // On success qa is marked certified.
  inline VerificationReport certify_period(QuotientAnalysis&     qa,
                                           heap_size             r0,
                                           heap_size             p,
                                           VerifierConfig const& cfg = {}) {
    if (r0 == 0 || p == 0) {
      throw InputError("period index and length must be positive");
    }
    auto const window = 2 * r0 + p + static_cast<heap_size>(qa.code.places());
    if (qa.phi.n() < window - 1) {
      throw RangeError("certifying (" + std::to_string(r0) + ", " + std::to_string(p)
                       + ") needs Phi to heap " + std::to_string(window - 1) + ", have "
                       + std::to_string(qa.phi.n()));
    }
    for (heap_size r = r0; r + p <= qa.phi.n(); ++r) {
      if (qa.phi.values[r - 1] != qa.phi.values[r + p - 1]) {
        throw RangeError("Phi(h_" + std::to_string(r) + ") != Phi(h_" + std::to_string(r + p)
                         + "): period (" + std::to_string(r0) + ", " + std::to_string(p)
                         + ") does not hold");
      }
    }
    auto report = verify_to_heap(qa, window - 1, cfg);
    if (report.passed) {
      qa.verified_to      = std::max(qa.verified_to.value_or(0), window - 1);
      qa.certified_period = PeriodCertificate{r0, p};
    }
    return report;
  }

}  // namespace misere

#endif  // MISERE_VERIFIER_HPP_
