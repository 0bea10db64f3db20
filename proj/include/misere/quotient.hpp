#ifndef MISERE_QUOTIENT_HPP_
#define MISERE_QUOTIENT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "monoid.hpp"
#include "octal.hpp"
#include "oracle.hpp"
#include "position.hpp"
#include "rewriting.hpp"
#include "words.hpp"

namespace misere {

  // Phi(h_1), ..., Phi(h_n), optionally with a claimed ultimate period.
  struct PretendingFunction {
    std::vector<element>             values;
    std::optional<PeriodCertificate> claimed_period;

    [[nodiscard]] heap_size n() const noexcept {
      return static_cast<heap_size>(values.size());
    }

    friend bool operator==(PretendingFunction const&, PretendingFunction const&) = default;
  };

  struct QuotientAnalysis {
    GameCode                         code;
    PlayConvention                   play = PlayConvention::misere;
    heap_size                        n    = 0;
    FiniteMonoid                     monoid;
    PretendingFunction               phi;
    std::vector<bool>                p_set;  // indexed by element
    std::optional<heap_size>         verified_to;
    std::optional<PeriodCertificate> certified_period;

    [[nodiscard]] bool is_p(element u) const {
      return p_set.at(u);
    }

    [[nodiscard]] std::vector<element> p_elements() const {
      std::vector<element> r;
      for (element u = 0; u < p_set.size(); ++u) {
        if (p_set[u]) {
          r.push_back(u);
        }
      }
      return r;
    }

    [[nodiscard]] std::vector<element> n_elements() const {
      std::vector<element> r;
      for (element u = 0; u < p_set.size(); ++u) {
        if (!p_set[u]) {
          r.push_back(u);
        }
      }
      return r;
    }

    friend bool operator==(QuotientAnalysis const& a, QuotientAnalysis const& b) {
      return a.code == b.code && a.play == b.play && a.n == b.n
             && static_cast<FiniteSemigroup const&>(a.monoid)
                    == static_cast<FiniteSemigroup const&>(b.monoid)
             && a.monoid.alphabet().names() == b.monoid.alphabet().names()
             && a.monoid.words() == b.monoid.words()
             && a.monoid.generators() == b.monoid.generators() && a.phi == b.phi
             && a.p_set == b.p_set && a.verified_to == b.verified_to
             && a.certified_period == b.certified_period;
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Reading an analysis
  ////////////////////////////////////////////////////////////////////////

  // Heap size with the same Phi value inside the stored range, using a
  // certified (or, if allowed, claimed) period.
  inline heap_size fold_heap(QuotientAnalysis const& qa, heap_size h, bool use_claimed = false) {
    if (h == 0) {
      throw LogicError("fold_heap: heap size 0");
    }
    if (h <= qa.phi.n()) {
      return h;
    }
    auto period = qa.certified_period;
    if (!period && use_claimed) {
      period = qa.phi.claimed_period;
    }
    if (!period) {
      throw RangeError("heap " + std::to_string(h) + " exceeds the analysed range "
                       + std::to_string(qa.phi.n()) + " and no period is certified");
    }
    auto const steps = (h - qa.phi.n() + period->period - 1) / period->period;
    auto const g     = h - steps * period->period;
    if (g < period->index) {
      throw RangeError("period index " + std::to_string(period->index)
                       + " lies beyond the analysed range");
    }
    return g;
  }

  inline element phi_of_heap(QuotientAnalysis const& qa, heap_size h, bool use_claimed = false) {
    return qa.phi.values[fold_heap(qa, h, use_claimed) - 1];
  }

  inline element phi_of_position(QuotientAnalysis const& qa,
                                 Position const&         p,
                                 bool                    use_claimed = false) {
    element r = qa.monoid.identity();
    for (auto h : p.heaps()) {
      r = qa.monoid.mul(r, phi_of_heap(qa, h, use_claimed));
    }
    return r;
  }

  inline Outcome predicted_outcome(QuotientAnalysis const& qa,
                                   Position const&         p,
                                   bool                    use_claimed = false) {
    return qa.is_p(phi_of_position(qa, p, use_claimed)) ? Outcome::P : Outcome::N;
  }

  // Smallest period, then smallest index, agreeing with every stored value.
  // A candidate must be backed by at least ceil(p/2) equalities, so that
  // the tail of a short table does not trivially "repeat".
  inline std::optional<PeriodCertificate> detect_period(std::vector<element> const& values) {
    auto const n = static_cast<heap_size>(values.size());
    for (heap_size p = 1; p < n; ++p) {
      heap_size r0 = n - p + 1;  // heaps are 1-based: Phi(h_k) = values[k-1]
      while (r0 > 1 && values[r0 - 2] == values[r0 - 2 + p]) {
        --r0;
      }
      heap_size const checks = n - p - r0 + 1;
      if (checks >= (p + 1) / 2 && checks > 0) {
        return PeriodCertificate{r0, p};
      }
    }
    return std::nullopt;
  }

  inline std::optional<PeriodCertificate> detect_period(PretendingFunction const& phi) {
    return detect_period(phi.values);
  }

  // Phi extended to new_n by a period (certified, else claimed).
  inline QuotientAnalysis extend_phi(QuotientAnalysis qa, heap_size new_n) {
    if (new_n <= qa.phi.n()) {
      return qa;
    }
    std::vector<element> values = qa.phi.values;
    for (heap_size h = qa.phi.n() + 1; h <= new_n; ++h) {
      values.push_back(phi_of_heap(qa, h, true));
    }
    qa.phi.values = std::move(values);
    qa.n          = new_n;
    return qa;
  }

  struct Move {
    heap_size heap;
    Position  replacement;  // what the heap becomes; empty when removed
    Position  result;
  };

  // First option (smallest heap, then smallest replacement) that the
  // quotient predicts to be P.  One table lookup per option.
  inline std::optional<Move> find_winning_move(QuotientAnalysis const& qa,
                                               Position const&         p,
                                               bool                    use_claimed = false) {
    heap_size last = 0;
    for (auto h : p.heaps()) {
      if (h == last) {
        continue;
      }
      last = h;
      for (auto const& t : moves_from_heap(qa.code, h)) {
        auto q = p.replace(h, t);
        if (predicted_outcome(qa, q, use_claimed) == Outcome::P) {
          return Move{h, t, std::move(q)};
        }
      }
    }
    return std::nullopt;
  }

  // A position of minimal token count (ties: fewest heaps, then smallest
  // sizes) for every element reachable from single heaps up to the range.
  inline std::vector<std::optional<Position>> representatives(QuotientAnalysis const& qa) {
    auto const&                           m = qa.monoid;
    std::vector<std::optional<Position>> best(m.size());
    auto better = [](Position const& a, Position const& b) {
      if (a.tokens() != b.tokens()) {
        return a.tokens() < b.tokens();
      }
      if (a.size() != b.size()) {
        return a.size() < b.size();
      }
      return a < b;
    };
    using Item = std::pair<std::uint64_t, Position>;
    auto cmp   = [&](Item const& a, Item const& b) { return better(b.second, a.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);
    queue.push({m.identity(), Position{}});
    best[m.identity()] = Position{};
    std::vector<bool> done(m.size(), false);
    while (!queue.empty()) {
      auto [u, p] = queue.top();
      queue.pop();
      if (done[u] || !(best[u] && *best[u] == p)) {
        continue;
      }
      done[u] = true;
      for (heap_size h = 1; h <= qa.phi.n(); ++h) {
        auto const v = m.mul(static_cast<element>(u), qa.phi.values[h - 1]);
        auto       q = p * Position::heap(h);
        if (!done[v] && (!best[v] || better(q, *best[v]))) {
          best[v] = q;
          queue.push({v, std::move(q)});
        }
      }
    }
    return best;
  }

  // Genus of the representative position; a display datum for the class.
  inline GenusSymbol element_genus(QuotientAnalysis const&   qa,
                                   element                   u,
                                   PositionGenusSolver&      solver,
                                   std::vector<std::optional<Position>> const& reps) {
    if (!reps.at(u)) {
      throw BudgetExceeded("element " + qa.monoid.name(u) + " has no representative position");
    }
    return solver.genus(*reps[u]);
  }

  inline GenusSymbol element_genus(QuotientAnalysis const& qa, element u) {
    PositionGenusSolver solver(qa.code);
    return element_genus(qa, u, solver, representatives(qa));
  }

  ////////////////////////////////////////////////////////////////////////
  // From a presentation
  ////////////////////////////////////////////////////////////////////////

  // An analysis whose monoid comes from completing the presentation and
  // whose Phi and P-set are read from its phi:/P: lines.
  inline QuotientAnalysis analysis_from_presentation(Presentation const& pres,
                                                     std::optional<GameCode> code = std::nullopt) {
    QuotientAnalysis qa;
    if (code) {
      qa.code = *code;
    } else if (pres.game) {
      qa.code = GameCode::parse(*pres.game);
    } else {
      throw InputError("presentation names no game");
    }
    qa.play   = pres.play ? parse_play(*pres.play) : PlayConvention::misere;
    auto rws  = knuth_bendix(pres);
    qa.monoid = enumerate_elements(rws);
    if (pres.phi.empty()) {
      throw InputError("presentation has no phi: line");
    }
    for (auto const& w : pres.phi) {
      qa.phi.values.push_back(qa.monoid.of_word(rws.reduce(w)));
    }
    qa.n = qa.phi.n();
    if (pres.period) {
      qa.phi.claimed_period = PeriodCertificate{pres.period->first, pres.period->second};
    }
    qa.p_set.assign(qa.monoid.size(), false);
    for (auto const& w : pres.p_set) {
      qa.p_set[qa.monoid.of_word(rws.reduce(w))] = true;
    }
    return qa;
  }

  ////////////////////////////////////////////////////////////////////////
  // Building a candidate quotient
  ////////////////////////////////////////////////////////////////////////

  struct BuilderConfig {
    // Contexts w range over all positions with at most this many heaps,
    // each of size <= n; the bound grows by one per round.
    std::size_t initial_context_heaps = 3;
    std::size_t max_context_heaps     = 7;
    std::size_t max_contexts          = 2'000'000;
    std::size_t max_classes           = 4096;
    std::size_t node_budget           = default_node_budget;
    // Names for generators in order of first appearance.
    std::vector<std::string> generator_names = {"x", "z", "a", "b", "c", "d", "f", "g",
                                                "h", "k", "m", "q", "r", "s", "u", "y"};
  };

  namespace detail {

    inline std::vector<Position> all_positions(heap_size n, std::size_t max_heaps, std::size_t cap) {
      std::vector<Position>  out;
      std::vector<heap_size> cur;
      auto rec = [&](auto&& self, heap_size lo) -> void {
        out.emplace_back(cur);
        if (out.size() > cap) {
          throw BudgetExceeded("context universe exceeds " + std::to_string(cap)
                               + " positions");
        }
        if (cur.size() == max_heaps) {
          return;
        }
        for (heap_size h = lo; h <= n; ++h) {
          cur.push_back(h);
          self(self, h);
          cur.pop_back();
        }
      };
      rec(rec, 1);
      return out;
    }

    // Generators: Phi values of heaps 1..n not generated by earlier ones,
    // then dropping any that the remaining ones generate.
    inline std::vector<heap_size> choose_generator_heaps(FiniteSemigroup const&      s,
                                                         element                     identity,
                                                         std::vector<element> const& phi) {
      auto closure = [&](std::vector<element> const& gens) {
        std::vector<bool>    in(s.size(), false);
        std::vector<element> queue{identity};
        in[identity] = true;
        while (!queue.empty()) {
          auto a = queue.back();
          queue.pop_back();
          for (auto g : gens) {
            if (auto c = s.mul(a, g); !in[c]) {
              in[c] = true;
              queue.push_back(c);
            }
          }
        }
        return in;
      };
      std::vector<heap_size> heaps;
      std::vector<element>   gens;
      for (heap_size h = 1; h <= phi.size(); ++h) {
        if (!closure(gens)[phi[h - 1]]) {
          heaps.push_back(h);
          gens.push_back(phi[h - 1]);
        }
      }
      for (std::size_t i = 0; i < gens.size();) {
        auto others = gens;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
        if (closure(others)[gens[i]]) {
          gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
          heaps.erase(heaps.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
      return heaps;
    }

    struct Round {
      std::vector<Position>             reps;
      std::vector<std::vector<element>> edges;  // edges[class][h-1]
      std::vector<bool>                 p_class;
    };

    inline Round build_round(GameCode const&               code,
                             heap_size                     n,
                             OutcomeSolver&                solver,
                             std::vector<Position> const&  contexts,
                             BuilderConfig const&          cfg) {
      Round                                       r;
      std::map<std::vector<bool>, element>        by_signature;
      auto signature = [&](Position const& u) {
        std::vector<bool> sig;
        sig.reserve(contexts.size());
        for (auto const& w : contexts) {
          sig.push_back(solver.outcome(u * w) == Outcome::P);
        }
        return sig;
      };
      (void)code;
      auto add = [&](Position const& u) -> element {
        auto sig = signature(u);
        if (auto it = by_signature.find(sig); it != by_signature.end()) {
          return it->second;
        }
        auto const id = static_cast<element>(r.reps.size());
        if (id >= cfg.max_classes) {
          throw BudgetExceeded("more than " + std::to_string(cfg.max_classes)
                               + " classes; the quotient may be infinite");
        }
        r.p_class.push_back(sig.front());  // contexts[0] is the endgame
        by_signature.emplace(std::move(sig), id);
        r.reps.push_back(u);
        r.edges.emplace_back();
        return id;
      };
      add(Position{});
      for (element c = 0; c < r.reps.size(); ++c) {
        for (heap_size h = 1; h <= n; ++h) {
          auto const target = add(r.reps[c] * Position::heap(h));
          r.edges[c].push_back(target);
        }
      }
      return r;
    }

    // Table, naming and Phi for one round; nullopt if the table fails to be
    // a commutative monoid (too few contexts to separate classes).
    inline std::optional<QuotientAnalysis> assemble(GameCode const&       code,
                                                    PlayConvention        play,
                                                    heap_size             n,
                                                    Round const&          r,
                                                    BuilderConfig const&  cfg) {
      auto const k = r.reps.size();
      std::vector<std::vector<element>> table(k, std::vector<element>(k));
      std::vector<std::string>          tmp_names(k);
      for (element i = 0; i < k; ++i) {
        tmp_names[i] = std::to_string(i);
        for (element j = 0; j < k; ++j) {
          element c = i;
          for (auto h : r.reps[j].heaps()) {
            c = r.edges[c][h - 1];
          }
          table[i][j] = c;
        }
      }
      FiniteSemigroup s(tmp_names, table);
      if (!s.is_commutative() || !s.is_associative() || s.identity() != element{0}) {
        return std::nullopt;
      }
      std::vector<element> phi;
      for (heap_size h = 1; h <= n; ++h) {
        phi.push_back(r.edges[0][h - 1]);
      }
      auto const gen_heaps = choose_generator_heaps(s, 0, phi);
      if (gen_heaps.size() > cfg.generator_names.size()) {
        throw BudgetExceeded("more generators than configured names");
      }
      std::vector<std::string> names(cfg.generator_names.begin(),
                                     cfg.generator_names.begin()
                                         + static_cast<std::ptrdiff_t>(gen_heaps.size()));
      Alphabet alpha(names);
      std::vector<element> gens;
      for (auto h : gen_heaps) {
        gens.push_back(phi[h - 1]);
      }
      // minimal word per class, degree by degree
      std::vector<std::optional<ExpVec>> word(k);
      word[0] = alpha.identity();
      std::vector<element> layer{0};
      while (!layer.empty()) {
        std::vector<std::pair<ExpVec, element>> cand;
        for (auto c : layer) {
          for (std::size_t g = 0; g < gens.size(); ++g) {
            cand.emplace_back(*word[c] * alpha.generator(g), s.mul(c, gens[g]));
          }
        }
        std::sort(cand.begin(), cand.end(), [](auto const& a, auto const& b) {
          return compare_monomials(a.first, b.first) < 0;
        });
        layer.clear();
        for (auto& [w, c] : cand) {
          if (!word[c]) {
            word[c] = w;
            layer.push_back(c);
          }
        }
      }
      std::vector<element> order(k);
      for (element i = 0; i < k; ++i) {
        if (!word[i]) {
          throw LogicError("class not generated by the chosen generators");
        }
        order[i] = i;
      }
      std::sort(order.begin(), order.end(), [&](element a, element b) {
        return compare_monomials(*word[a], *word[b]) < 0;
      });
      std::vector<element> rank(k);
      for (element i = 0; i < k; ++i) {
        rank[order[i]] = i;
      }
      std::vector<ExpVec>               words;
      std::vector<std::vector<element>> sorted(k, std::vector<element>(k));
      for (element i = 0; i < k; ++i) {
        words.push_back(*word[order[i]]);
        for (element j = 0; j < k; ++j) {
          sorted[i][j] = rank[table[order[i]][order[j]]];
        }
      }
      for (auto& g : gens) {
        g = rank[g];
      }
      QuotientAnalysis qa;
      qa.code   = code;
      qa.play   = play;
      qa.n      = n;
      qa.monoid = FiniteMonoid(alpha, std::move(words), std::move(sorted), std::move(gens));
      for (auto v : phi) {
        qa.phi.values.push_back(rank[v]);
      }
      qa.p_set.assign(k, false);
      for (element i = 0; i < k; ++i) {
        qa.p_set[rank[i]] = r.p_class[i];
      }
      return qa;
    }

  }  // namespace detail

  // Candidate quotient from bounded empirical indistinguishability.  Two
  // positions are merged when they have equal outcomes in every context of
  // at most c heaps of size <= n; c grows until two consecutive rounds give
  // the same analysis.  The result is unverified.
  inline QuotientAnalysis build_quotient(GameCode const&      code,
                                         heap_size            n,
                                         PlayConvention       play,
                                         BuilderConfig const& cfg = {}) {
    if (n == 0) {
      throw InputError("heap bound must be positive");
    }
    OutcomeSolver                   solver(code, play, cfg.node_budget);
    std::optional<QuotientAnalysis> previous;
    for (auto c = cfg.initial_context_heaps; c <= cfg.max_context_heaps; ++c) {
      auto const contexts = detail::all_positions(n, c, cfg.max_contexts);
      auto const round    = detail::build_round(code, n, solver, contexts, cfg);
      auto       qa       = detail::assemble(code, play, n, round, cfg);
      if (qa && previous && *qa == *previous) {
        qa->phi.claimed_period = detect_period(qa->phi);
        return *qa;
      }
      previous = std::move(qa);
    }
    throw BudgetExceeded("quotient did not stabilise with contexts of up to "
                         + std::to_string(cfg.max_context_heaps) + " heaps");
  }

}  // namespace misere

#endif  // MISERE_QUOTIENT_HPP_
