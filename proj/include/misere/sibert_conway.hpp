#ifndef MISERE_SIBERT_CONWAY_HPP_
#define MISERE_SIBERT_CONWAY_HPP_

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "octal.hpp"
#include "oracle.hpp"
#include "position.hpp"

namespace misere {

  // Closed-form outcomes of Kayles (0.77) in both play conventions.  Misere
  // and normal outcomes agree except on the PN and NP families below.
  class SibertConway {
   public:
    struct Factor {
      enum Kind { even, odd, single } kind;
      std::vector<heap_size> sizes;
    };
    using Pattern = std::vector<Factor>;

    struct Result {
      Outcome normal;
      Outcome misere;
    };

    // Normal P, misere N.
    static std::vector<Pattern> const& pn_patterns() {
      static std::vector<Pattern> const patterns = {
          {E({5}), E({4, 1})},
          {E({17, 12, 9}), E({20, 4, 1})},
          {S(25), E({17, 12, 9}), D({20, 4, 1})},
      };
      return patterns;
    }

    // Normal N, misere P.
    static std::vector<Pattern> const& np_patterns() {
      static std::vector<Pattern> const patterns = {
          {D({5}), D({4, 1})},
          {E({5}), D({4, 1})},
          {D({9}), E({4, 1})},
          {S(12), E({4, 1})},
          {E({17, 12, 9}), D({20, 4, 1})},
          {S(25), D({9}), D({4, 1})},
      };
      return patterns;
    }

    // Every heap size must be covered by some factor; E/D constrain the
    // parity of the total count of heaps in their size set, a bare size
    // means exactly one heap of it.
    static bool matches(Pattern const& pattern, Position const& p) {
      for (auto h : p.heaps()) {
        bool covered = std::any_of(pattern.begin(), pattern.end(), [&](Factor const& f) {
          return std::find(f.sizes.begin(), f.sizes.end(), h) != f.sizes.end();
        });
        if (!covered) {
          return false;
        }
      }
      for (auto const& f : pattern) {
        std::size_t n = 0;
        for (auto s : f.sizes) {
          n += p.count(s);
        }
        switch (f.kind) {
          case Factor::even:
            if (n % 2 != 0) {
              return false;
            }
            break;
          case Factor::odd:
            if (n % 2 != 1) {
              return false;
            }
            break;
          case Factor::single:
            if (n != 1) {
              return false;
            }
            break;
        }
      }
      return true;
    }

    Result operator()(Position const& p) {
      if (grundy_.size() <= p.max_heap()) {
        grundy_ = grundy_sequence(kayles(), std::max<heap_size>(p.max_heap(), 128));
      }
      Result r;
      r.normal = grundy(grundy_, p) == 0 ? Outcome::P : Outcome::N;
      r.misere = r.normal;
      auto any = [&](std::vector<Pattern> const& ps) {
        return std::any_of(ps.begin(), ps.end(), [&](Pattern const& q) { return matches(q, p); });
      };
      if (any(pn_patterns())) {
        r.misere = Outcome::N;
      } else if (any(np_patterns())) {
        r.misere = Outcome::P;
      }
      return r;
    }

    static GameCode const& kayles() {
      static GameCode const code = GameCode::parse("0.77");
      return code;
    }

   private:
    static Factor E(std::initializer_list<heap_size> s) {
      return {Factor::even, s};
    }
    static Factor D(std::initializer_list<heap_size> s) {
      return {Factor::odd, s};
    }
    static Factor S(heap_size h) {
      return {Factor::single, {h}};
    }

    std::vector<std::uint32_t> grundy_;
  };

  inline SibertConway::Result sibert_conway_outcome(Position const& p) {
    SibertConway sc;
    return sc(p);
  }

}  // namespace misere

#endif  // MISERE_SIBERT_CONWAY_HPP_
