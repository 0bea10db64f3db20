#ifndef MISERE_ORACLE_HPP_
#define MISERE_ORACLE_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "octal.hpp"
#include "position.hpp"

namespace misere {

  enum class PlayConvention { normal, misere };

  enum class Outcome { P, N };

  inline std::string to_string(PlayConvention play) {
    return play == PlayConvention::normal ? "normal" : "misere";
  }

  inline std::string to_string(Outcome o) {
    return o == Outcome::P ? "P" : "N";
  }

  inline PlayConvention parse_play(std::string_view s) {
    if (s == "normal") {
      return PlayConvention::normal;
    }
    if (s == "misere") {
      return PlayConvention::misere;
    }
    throw InputError("unknown play convention \"" + std::string(s) + "\"");
  }

  inline constexpr std::size_t default_node_budget = 100'000'000;

  inline std::uint32_t mex(std::vector<bool> const& seen) {
    std::uint32_t m = 0;
    while (m < seen.size() && seen[m]) {
      ++m;
    }
    return m;
  }

  inline void mark(std::vector<bool>& seen, std::uint32_t v) {
    if (seen.size() <= v) {
      seen.resize(v + 1, false);
    }
    seen[v] = true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Positions of an octal game
  ////////////////////////////////////////////////////////////////////////

  // Every position reachable from p by one move on one heap.
  inline std::vector<Position> position_options(MoveTable& moves, Position const& p) {
    std::vector<Position> result;
    auto const            heaps = p.heaps();
    for (std::size_t i = 0; i < heaps.size(); ++i) {
      if (i > 0 && heaps[i] == heaps[i - 1]) {
        continue;
      }
      for (auto const& t : moves(heaps[i])) {
        result.push_back(p.replace(heaps[i], t));
      }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

  inline std::vector<Position> position_options(GameCode const& code, Position const& p) {
    MoveTable moves(code);
    return position_options(moves, p);
  }

  // Outcome classes by memoised search over sorted multisets.  Sums are
  // searched directly, never composed from per-heap values.
  class OutcomeSolver {
   public:
    OutcomeSolver(GameCode code, PlayConvention play, std::size_t budget = default_node_budget)
        : moves_(std::move(code)), play_(play), budget_(budget) {}

    [[nodiscard]] GameCode const& code() const noexcept {
      return moves_.code();
    }

    [[nodiscard]] PlayConvention play() const noexcept {
      return play_;
    }

    [[nodiscard]] std::size_t memo_size() const noexcept {
      return memo_.size();
    }

    Outcome operator()(Position const& p) {
      return outcome(p);
    }

    Outcome outcome(Position const& p) {
      auto key = p.key();
      if (auto it = memo_.find(key); it != memo_.end()) {
        return it->second ? Outcome::N : Outcome::P;
      }
      bool has_option = false;
      bool next_wins  = false;
      auto heaps      = p.heaps();
      for (std::size_t i = 0; i < heaps.size() && !next_wins; ++i) {
        if (i > 0 && heaps[i] == heaps[i - 1]) {
          continue;
        }
        for (auto const& t : moves_(heaps[i])) {
          has_option = true;
          if (outcome(p.replace(heaps[i], t)) == Outcome::P) {
            next_wins = true;
            break;
          }
        }
      }
      if (!has_option) {
        next_wins = (play_ == PlayConvention::misere);
      }
      if (memo_.size() >= budget_) {
        throw BudgetExceeded("outcome search exceeded " + std::to_string(budget_)
                             + " memo entries");
      }
      memo_.emplace(std::move(key), next_wins);
      return next_wins ? Outcome::N : Outcome::P;
    }

   private:
    MoveTable                             moves_;
    PlayConvention                        play_;
    std::size_t                           budget_;
    std::unordered_map<std::string, bool> memo_;
  };

  inline Outcome outcome(GameCode const& code, Position const& p, PlayConvention play) {
    OutcomeSolver solver(code, play);
    return solver.outcome(p);
  }

  ////////////////////////////////////////////////////////////////////////
  // Normal play: Grundy values and Guy-Smith periodicity
  ////////////////////////////////////////////////////////////////////////

  // G(0), ..., G(n) for single heaps.
  inline std::vector<std::uint32_t> grundy_sequence(GameCode const& code, heap_size n) {
    std::vector<std::uint32_t> g(n + 1, 0);
    for (heap_size f = 1; f <= n; ++f) {
      std::vector<bool> seen;
      for (auto const& t : moves_from_heap(code, f)) {
        std::uint32_t v = 0;
        for (auto h : t.heaps()) {
          v ^= g[h];
        }
        mark(seen, v);
      }
      g[f] = mex(seen);
    }
    return g;
  }

  inline std::uint32_t grundy(GameCode const& code, heap_size f) {
    return grundy_sequence(code, f)[f];
  }

  inline std::uint32_t grundy(std::vector<std::uint32_t> const& g, Position const& p) {
    std::uint32_t v = 0;
    for (auto h : p.heaps()) {
      v ^= g.at(h);
    }
    return v;
  }

  struct PeriodCertificate {
    heap_size index;   // r0
    heap_size period;  // p
    friend bool operator==(PeriodCertificate const&, PeriodCertificate const&) = default;
  };

  // Guy-Smith: G(r + p) = G(r) for r0 <= r < 2 r0 + p + P proves ultimate
  // period p from r0.  Returns the smallest period, then the smallest index
  // for it, within the bounds.
  inline std::optional<PeriodCertificate> normal_period(GameCode const& code,
                                                        heap_size       r0_max,
                                                        heap_size       p_max = 0) {
    if (p_max == 0) {
      p_max = r0_max;
    }
    auto const places = static_cast<heap_size>(code.places());
    auto const g      = grundy_sequence(code, 2 * r0_max + 2 * p_max + places);
    for (heap_size p = 1; p <= p_max; ++p) {
      for (heap_size r0 = 1; r0 <= r0_max; ++r0) {
        bool ok = true;
        for (heap_size r = r0; r < 2 * r0 + p + places && ok; ++r) {
          ok = g[r + p] == g[r];
        }
        if (ok) {
          return PeriodCertificate{r0, p};
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Genus symbols
  ////////////////////////////////////////////////////////////////////////

  // g+ together with the misere values g0 g1 g2 ... of the game plus 0, 1,
  // 2, ... copies of *2.  The last two stored exponents repeat forever.
  struct GenusSymbol {
    std::uint32_t              g_plus = 0;
    std::vector<std::uint32_t> exponents;

    friend bool operator==(GenusSymbol const&, GenusSymbol const&) = default;

    [[nodiscard]] std::uint32_t exponent(std::size_t i) const {
      if (i < exponents.size()) {
        return exponents[i];
      }
      auto const k = exponents.size();
      return exponents[k - 2 + (i - (k - 2)) % 2];
    }

    // "g^{e0e1...}", exponents above 9 written in brackets: 8^{8[10]}.
    [[nodiscard]] std::string to_string() const {
      std::string s = std::to_string(g_plus) + "^{";
      for (auto e : exponents) {
        s += e < 10 ? std::to_string(e) : "[" + std::to_string(e) + "]";
      }
      return s + "}";
    }

    // The nim heap *g has genus 0^{120}, 1^{031} or g^{g(g^2)}.
    [[nodiscard]] static GenusSymbol of_nim_heap(std::uint32_t g) {
      if (g == 0) {
        return {0, {1, 2, 0}};
      }
      if (g == 1) {
        return {1, {0, 3, 1}};
      }
      return {g, {g, g ^ 2U}};
    }

    // Tables print a nim heap's genus as its bare size.
    [[nodiscard]] std::string to_short_string() const {
      if (*this == of_nim_heap(g_plus)) {
        return std::to_string(g_plus);
      }
      return to_string();
    }

    // Accepts "g^{...}", "g^..." and a bare "g" meaning the nim heap *g.
    static GenusSymbol parse(std::string_view text) {
      auto bad = [&] {
        return InputError("malformed genus symbol \"" + std::string(text) + "\"");
      };
      std::size_t i   = 0;
      auto        num = [&]() -> std::uint32_t {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
          throw bad();
        }
        std::uint32_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::uint32_t>(text[i++] - '0');
        }
        return v;
      };
      GenusSymbol g;
      g.g_plus = num();
      if (i == text.size()) {
        return of_nim_heap(g.g_plus);
      }
      if (text[i++] != '^') {
        throw bad();
      }
      bool braced = i < text.size() && text[i] == '{';
      if (braced) {
        ++i;
      }
      while (i < text.size() && text[i] != '}') {
        if (text[i] == '[') {
          ++i;
          g.exponents.push_back(num());
          if (i >= text.size() || text[i++] != ']') {
            throw bad();
          }
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
          g.exponents.push_back(static_cast<std::uint32_t>(text[i++] - '0'));
        } else {
          throw bad();
        }
      }
      if (braced && (i >= text.size() || text[i] != '}')) {
        throw bad();
      }
      if (g.exponents.size() < 2) {
        throw bad();
      }
      return g;
    }
  };

  inline constexpr std::size_t default_genus_cap = 16;

  // Truncates g0 g1 ... to the shortest prefix ending in a 2-cycle that is
  // confirmed by two further values.  next(i) yields g_i.
  template <typename Next>
  GenusSymbol make_genus(std::uint32_t g_plus, Next&& next, std::size_t cap) {
    std::vector<std::uint32_t> g;
    for (std::size_t i = 0; i < cap + 2; ++i) {
      g.push_back(next(i));
      for (std::size_t j = 0; j + 4 <= g.size(); ++j) {
        bool periodic = true;
        for (std::size_t m = j + 2; m < g.size() && periodic; ++m) {
          periodic = g[m] == g[m - 2];
        }
        if (periodic) {
          g.resize(j + 2);
          return {g_plus, std::move(g)};
        }
      }
    }
    throw LogicError("genus tail not confirmed within " + std::to_string(cap)
                     + " exponents");
  }

  // Tame genera: those of misere Nim positions.
  inline bool is_wild_genus(GenusSymbol const& g) {
    if (g == GenusSymbol{0, {1, 2, 0}} || g == GenusSymbol{1, {0, 3, 1}}
        || g == GenusSymbol{0, {0, 2}} || g == GenusSymbol{1, {1, 3}}) {
      return false;
    }
    if (g.g_plus >= 2 && g == GenusSymbol{g.g_plus, {g.g_plus, g.g_plus ^ 2U}}) {
      return false;
    }
    return true;
  }

  // Misere values of positions of an octal game plus some *1 and *2 heaps.
  class PositionGenusSolver {
   public:
    explicit PositionGenusSolver(GameCode code, std::size_t budget = default_node_budget)
        : moves_(std::move(code)), budget_(budget) {}

    // G-(p + ones*1 + twos*2): endgame 1, otherwise mex of options.
    std::uint32_t gminus(Position const& p, std::uint32_t twos = 0, std::uint32_t ones = 0) {
      auto key = p.key();
      key.push_back(static_cast<char>(twos));
      key.push_back(static_cast<char>(ones));
      if (auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
      }
      std::vector<bool> seen;
      bool              any   = false;
      auto              heaps = p.heaps();
      for (std::size_t i = 0; i < heaps.size(); ++i) {
        if (i > 0 && heaps[i] == heaps[i - 1]) {
          continue;
        }
        for (auto const& t : moves_(heaps[i])) {
          any = true;
          mark(seen, gminus(p.replace(heaps[i], t), twos, ones));
        }
      }
      if (twos > 0) {
        any = true;
        mark(seen, gminus(p, twos - 1, ones + 1));
        mark(seen, gminus(p, twos - 1, ones));
      }
      if (ones > 0) {
        any = true;
        mark(seen, gminus(p, twos, ones - 1));
      }
      std::uint32_t const v = any ? mex(seen) : 1;
      if (memo_.size() >= budget_) {
        throw BudgetExceeded("genus search exceeded " + std::to_string(budget_)
                             + " memo entries");
      }
      memo_.emplace(std::move(key), v);
      return v;
    }

    std::uint32_t gplus(Position const& p) {
      if (grundy_.size() <= p.max_heap()) {
        grundy_ = grundy_sequence(moves_.code(), p.max_heap());
      }
      return grundy(grundy_, p);
    }

    GenusSymbol genus(Position const& p, std::size_t cap = default_genus_cap) {
      return make_genus(
          gplus(p), [&](std::size_t i) { return gminus(p, static_cast<std::uint32_t>(i)); }, cap);
    }

   private:
    MoveTable                                      moves_;
    std::vector<std::uint32_t>                     grundy_;
    std::size_t                                    budget_;
    std::unordered_map<std::string, std::uint32_t> memo_;
  };

  inline GenusSymbol genus(GameCode const& code, Position const& p) {
    PositionGenusSolver solver(code);
    return solver.genus(p);
  }

  ////////////////////////////////////////////////////////////////////////
  // Explicit game trees
  ////////////////////////////////////////////////////////////////////////

  // A finite impartial game given by its set of options.  Subtrees are
  // shared, so unfolding a position costs one node per distinct position.
  class GameTree {
   public:
    GameTree() : options_(std::make_shared<std::vector<GameTree> const>()) {}

    explicit GameTree(std::vector<GameTree> options)
        : options_(std::make_shared<std::vector<GameTree> const>(std::move(options))) {}

    static GameTree endgame() {
      return GameTree();
    }

    // *k = {*0, ..., *(k-1)}
    static GameTree nim(std::uint32_t k) {
      std::vector<GameTree> heaps;
      for (std::uint32_t i = 0; i < k; ++i) {
        heaps.push_back(GameTree(std::vector<GameTree>(heaps)));
      }
      return GameTree(std::move(heaps));
    }

    [[nodiscard]] std::vector<GameTree> const& options() const noexcept {
      return *options_;
    }

    [[nodiscard]] bool is_endgame() const noexcept {
      return options_->empty();
    }

    [[nodiscard]] void const* identity() const noexcept {
      return options_.get();
    }

    // Text form: "{...}" lists options, a bare integer k is the nim heap *k.
    // The game {{{2},3},{{2},2,0},3,1} has four options.
    static GameTree parse(std::string_view text) {
      std::size_t i    = 0;
      auto        tree = parse_item(text, i);
      skip_space(text, i);
      if (i != text.size()) {
        throw InputError("trailing characters in game tree \"" + std::string(text) + "\"");
      }
      return tree;
    }

   private:
    static void skip_space(std::string_view text, std::size_t& i) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    }

    static GameTree parse_item(std::string_view text, std::size_t& i) {
      skip_space(text, i);
      if (i >= text.size()) {
        throw InputError("unexpected end of game tree \"" + std::string(text) + "\"");
      }
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::uint32_t k = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          k = k * 10 + static_cast<std::uint32_t>(text[i++] - '0');
        }
        return nim(k);
      }
      if (text[i] != '{') {
        throw InputError("unexpected character in game tree \"" + std::string(text) + "\"");
      }
      ++i;
      std::vector<GameTree> options;
      skip_space(text, i);
      if (i < text.size() && text[i] == '}') {
        ++i;
        return GameTree(std::move(options));
      }
      while (true) {
        options.push_back(parse_item(text, i));
        skip_space(text, i);
        if (i >= text.size()) {
          throw InputError("unterminated game tree \"" + std::string(text) + "\"");
        }
        if (text[i] == ',') {
          ++i;
          continue;
        }
        if (text[i] == '}') {
          ++i;
          return GameTree(std::move(options));
        }
        throw InputError("unexpected character in game tree \"" + std::string(text) + "\"");
      }
    }

    std::shared_ptr<std::vector<GameTree> const> options_;
  };

  // Unfolds a heap position into its explicit game tree.
  inline GameTree tree_of_position(GameCode const& code,
                                   Position const& p,
                                   std::size_t     cap = 1'000'000) {
    MoveTable                              moves(code);
    std::unordered_map<Position, GameTree> memo;
    auto build = [&](auto&& self, Position const& q) -> GameTree {
      if (auto it = memo.find(q); it != memo.end()) {
        return it->second;
      }
      std::vector<GameTree> options;
      for (auto const& r : position_options(moves, q)) {
        options.push_back(self(self, r));
      }
      if (memo.size() >= cap) {
        throw BudgetExceeded("tree_of_position exceeded " + std::to_string(cap) + " nodes");
      }
      GameTree tree(std::move(options));
      memo.emplace(q, tree);
      return tree;
    };
    return build(build, p);
  }

  // Evaluates sums of explicit game trees.  Nodes are interned so that
  // structurally equal subtrees share an id; a sum is a sorted id multiset.
  class TreeSolver {
   public:
    using node_id = std::uint32_t;

    explicit TreeSolver(std::size_t budget = default_node_budget) : budget_(budget) {
      nodes_.push_back({});  // 0 is the endgame
      grundy_.push_back(0);
      by_options_.emplace(std::vector<node_id>{}, 0);
    }

    node_id intern(GameTree const& t) {
      if (auto it = by_ptr_.find(t.identity()); it != by_ptr_.end()) {
        return it->second;
      }
      std::vector<node_id> opts;
      for (auto const& o : t.options()) {
        opts.push_back(intern(o));
      }
      std::sort(opts.begin(), opts.end());
      opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
      node_id id;
      if (auto it = by_options_.find(opts); it != by_options_.end()) {
        id = it->second;
      } else {
        id = static_cast<node_id>(nodes_.size());
        std::vector<bool> seen;
        for (auto o : opts) {
          mark(seen, grundy_[o]);
        }
        grundy_.push_back(mex(seen));
        nodes_.push_back(opts);
        by_options_.emplace(std::move(opts), id);
      }
      by_ptr_.emplace(t.identity(), id);
      keep_.push_back(t);
      return id;
    }

    // Normal play value of the sum.
    std::uint32_t gplus(std::vector<GameTree> const& sum) {
      std::uint32_t v = 0;
      for (auto const& t : sum) {
        v ^= grundy_[intern(t)];
      }
      return v;
    }

    // Misere value of the sum: endgame 1, otherwise mex of options.
    std::uint32_t gminus(std::vector<GameTree> const& sum) {
      std::vector<node_id> ids;
      for (auto const& t : sum) {
        ids.push_back(intern(t));
      }
      return gminus_ids(canonical(std::move(ids)));
    }

    Outcome outcome(std::vector<GameTree> const& sum, PlayConvention play) {
      if (play == PlayConvention::normal) {
        return gplus(sum) == 0 ? Outcome::P : Outcome::N;
      }
      return gminus(sum) == 0 ? Outcome::P : Outcome::N;
    }

    GenusSymbol genus(std::vector<GameTree> sum, std::size_t cap = default_genus_cap) {
      auto const two  = GameTree::nim(2);
      auto const base = sum.size();
      auto const gp   = gplus(sum);
      return make_genus(
          gp,
          [&](std::size_t i) {
            sum.resize(base + i, two);
            return gminus(sum);
          },
          cap);
    }

   private:
    static std::vector<node_id> canonical(std::vector<node_id> ids) {
      std::erase(ids, node_id{0});
      std::sort(ids.begin(), ids.end());
      return ids;
    }

    std::uint32_t gminus_ids(std::vector<node_id> const& ids) {
      if (auto it = memo_.find(ids); it != memo_.end()) {
        return it->second;
      }
      if (ids.empty()) {
        return 1;
      }
      std::vector<bool> seen;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0 && ids[i] == ids[i - 1]) {
          continue;
        }
        for (auto o : nodes_[ids[i]]) {
          auto next = ids;
          next[i]   = o;
          mark(seen, gminus_ids(canonical(std::move(next))));
        }
      }
      auto const v = mex(seen);
      if (memo_.size() >= budget_) {
        throw BudgetExceeded("tree search exceeded " + std::to_string(budget_) + " memo entries");
      }
      memo_.emplace(ids, v);
      return v;
    }

    std::size_t                                   budget_;
    std::vector<std::vector<node_id>>             nodes_;
    std::vector<std::uint32_t>                    grundy_;
    std::map<std::vector<node_id>, node_id>       by_options_;
    std::unordered_map<void const*, node_id>      by_ptr_;
    std::vector<GameTree>                         keep_;  // pins interned pointers
    std::map<std::vector<node_id>, std::uint32_t> memo_;
  };

  inline std::uint32_t misere_gminus(GameTree const& t) {
    TreeSolver solver;
    return solver.gminus({t});
  }

  inline GenusSymbol genus(GameTree const& t) {
    TreeSolver solver;
    return solver.genus({t});
  }

  inline GenusSymbol genus(std::vector<GameTree> const& sum) {
    TreeSolver solver;
    return solver.genus(sum);
  }

}  // namespace misere

#endif  // MISERE_ORACLE_HPP_
