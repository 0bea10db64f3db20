#ifndef MISERE_WORDS_HPP_
#define MISERE_WORDS_HPP_

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace misere {

  // A monomial in commuting generators, stored as one exponent per
  // generator.  The all-zero vector is the identity e.
  using ExpVec = std::vector<std::uint32_t>;

  inline std::uint64_t degree(ExpVec const& a) {
    std::uint64_t d = 0;
    for (auto e : a) {
      d += e;
    }
    return d;
  }

  inline bool is_identity(ExpVec const& a) {
    return std::all_of(a.begin(), a.end(), [](auto e) { return e == 0; });
  }

  inline ExpVec operator*(ExpVec const& a, ExpVec const& b) {
    ExpVec c(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] += b[i];
    }
    return c;
  }

  // a | b
  inline bool divides(ExpVec const& a, ExpVec const& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) {
        return false;
      }
    }
    return true;
  }

  // b / a, assuming a | b
  inline ExpVec quotient(ExpVec const& b, ExpVec const& a) {
    ExpVec c(b);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] -= a[i];
    }
    return c;
  }

  inline ExpVec lcm(ExpVec const& a, ExpVec const& b) {
    ExpVec c(a.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = std::max(a[i], b[i]);
    }
    return c;
  }

  inline bool share_generator(ExpVec const& a, ExpVec const& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != 0 && b[i] != 0) {
        return true;
      }
    }
    return false;
  }

  // Graded order; among words of equal degree the one with the larger
  // exponent at the first differing generator is smaller.  Writing words
  // as sorted generator strings this is shortlex: x*z*z < x*z*a < z*z*z.
  inline std::strong_ordering compare_monomials(ExpVec const& a, ExpVec const& b) {
    if (auto c = degree(a) <=> degree(b); c != 0) {
      return c;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) {
        return b[i] <=> a[i];
      }
    }
    return std::strong_ordering::equal;
  }

  struct MonomialLess {
    bool operator()(ExpVec const& a, ExpVec const& b) const {
      return compare_monomials(a, b) < 0;
    }
  };

  // Generator names with word parsing and printing.  "e" (unless it is a
  // generator) and "1" denote the identity.
  class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
      for (std::size_t i = 0; i < names_.size(); ++i) {
        auto const& n = names_[i];
        if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))
            || !std::all_of(n.begin(), n.end(), [](char c) {
                 return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
               })) {
          throw InputError("invalid generator name \"" + n + "\"");
        }
        if (std::find(names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(i), n)
            != names_.begin() + static_cast<std::ptrdiff_t>(i)) {
          throw InputError("duplicate generator name \"" + n + "\"");
        }
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return names_.size();
    }

    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return names_;
    }

    [[nodiscard]] std::string const& name(std::size_t i) const {
      return names_.at(i);
    }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view n) const {
      auto it = std::find(names_.begin(), names_.end(), n);
      if (it == names_.end()) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - names_.begin());
    }

    [[nodiscard]] ExpVec identity() const {
      return ExpVec(names_.size(), 0);
    }

    [[nodiscard]] ExpVec generator(std::size_t i) const {
      auto v = identity();
      v.at(i) = 1;
      return v;
    }

    // Accepts "x z^2 a b^3", "z*b^2", "xz^2" (juxtaposed names are split
    // greedily, longest name first), "e" and "1".
    [[nodiscard]] ExpVec parse(std::string_view text) const {
      auto        w = identity();
      std::size_t i = 0;
      auto        bad = [&](std::string const& why) {
        return InputError("cannot parse word \"" + std::string(text) + "\": " + why);
      };
      while (i < text.size()) {
        char const c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
          ++i;
          continue;
        }
        std::optional<std::size_t> gen;
        std::size_t                len = 0;
        for (std::size_t g = 0; g < names_.size(); ++g) {
          auto const& n = names_[g];
          if (n.size() > len && text.substr(i, n.size()) == n) {
            gen = g;
            len = n.size();
          }
        }
        bool ident = false;
        if (!gen) {
          if (c == '1' || c == 'e') {
            ident = true;
            len   = 1;
          } else {
            throw bad("unknown generator at offset " + std::to_string(i));
          }
        }
        i += len;
        std::uint32_t power = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw bad("missing exponent");
          }
          power = 0;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            power = power * 10 + static_cast<std::uint32_t>(text[i++] - '0');
            if (power > 1'000'000) {
              throw bad("exponent too large");
            }
          }
        }
        if (!ident) {
          w[*gen] += power;
        }
      }
      return w;
    }

    // Juxtaposed "xzb^2" when every name is one character, else "x*z*b^2".
    [[nodiscard]] std::string format(ExpVec const& w) const {
      bool const compact = std::all_of(
          names_.begin(), names_.end(), [](auto const& n) { return n.size() == 1; });
      return format(w, compact ? "" : "*");
    }

    [[nodiscard]] std::string format(ExpVec const& w, std::string_view sep) const {
      std::string s;
      for (std::size_t g = 0; g < w.size(); ++g) {
        if (w[g] == 0) {
          continue;
        }
        if (!s.empty()) {
          s += sep;
        }
        s += names_[g];
        if (w[g] > 1) {
          s += "^" + std::to_string(w[g]);
        }
      }
      return s.empty() ? "e" : s;
    }

   private:
    std::vector<std::string> names_;
  };

  struct Relation {
    ExpVec lhs;
    ExpVec rhs;
  };

  // A commutative monoid presentation, optionally carrying a pretending
  // function and outcome partition for a game:
  //
  //   gens: x z a b
  //   x^2 = 1
  //   abz = b
  //   game: 0.123
  //   phi: x e z z x b^2 e a b x b^2 e
  //   period: 6 5
  //   P: x xa b^2 z^2 zb
  struct Presentation {
    Alphabet              alphabet;
    std::vector<Relation> relations;

    std::optional<std::string>                 game;
    std::optional<std::string>                 play;
    std::vector<ExpVec>                        phi;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> period;
    std::vector<ExpVec>                        p_set;

    static Presentation parse(std::string_view text) {
      Presentation       pres;
      bool               have_gens = false;
      std::istringstream in{std::string(text)};
      std::string        line;
      std::size_t        lineno = 0;
      std::vector<std::pair<std::size_t, std::string>> deferred;
      auto               fail = [&](std::string const& why) {
        return InputError("presentation line " + std::to_string(lineno) + ": " + why);
      };
      while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
          line.erase(hash);
        }
        auto const first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
          continue;
        }
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        auto const colon = line.find(':');
        if (colon != std::string::npos && line.find('=') == std::string::npos) {
          auto key  = line.substr(0, colon);
          auto rest = line.substr(colon + 1);
          if (key == "gens") {
            std::istringstream words(rest);
            std::vector<std::string> names;
            for (std::string n; words >> n;) {
              names.push_back(n);
            }
            if (names.empty()) {
              throw fail("no generators");
            }
            pres.alphabet = Alphabet(std::move(names));
            have_gens     = true;
          } else if (key == "game" || key == "play" || key == "phi" || key == "P"
                     || key == "period") {
            deferred.emplace_back(lineno, line);
          } else {
            throw fail("unknown key \"" + key + "\"");
          }
          continue;
        }
        deferred.emplace_back(lineno, line);
      }
      if (!have_gens) {
        throw InputError("presentation has no gens: line");
      }
      for (auto const& [no, l] : deferred) {
        lineno = no;
        auto const eq = l.find('=');
        if (eq != std::string::npos) {
          if (l.find('=', eq + 1) != std::string::npos) {
            throw fail("more than one '='");
          }
          pres.relations.push_back({pres.alphabet.parse(l.substr(0, eq)),
                                    pres.alphabet.parse(l.substr(eq + 1))});
          continue;
        }
        auto const colon = l.find(':');
        auto const key   = l.substr(0, colon);
        std::istringstream words(l.substr(colon + 1));
        std::vector<std::string> items;
        for (std::string w; words >> w;) {
          items.push_back(w);
        }
        if (key == "game" || key == "play") {
          if (items.size() != 1) {
            throw fail(key + " takes one value");
          }
          (key == "game" ? pres.game : pres.play) = items[0];
        } else if (key == "phi") {
          for (auto const& w : items) {
            pres.phi.push_back(pres.alphabet.parse(w));
          }
        } else if (key == "P") {
          for (auto const& w : items) {
            pres.p_set.push_back(pres.alphabet.parse(w));
          }
        } else if (key == "period") {
          if (items.size() != 2) {
            throw fail("period takes two values: index and period");
          }
          try {
            pres.period = {static_cast<std::uint32_t>(std::stoul(items[0])),
                           static_cast<std::uint32_t>(std::stoul(items[1]))};
          } catch (std::exception const&) {
            throw fail("period values must be integers");
          }
        }
      }
      return pres;
    }

    static Presentation load(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw InputError("cannot open presentation file " + path);
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      return parse(buffer.str());
    }
  };

}  // namespace misere

#endif  // MISERE_WORDS_HPP_
