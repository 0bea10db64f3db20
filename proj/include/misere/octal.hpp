#ifndef MISERE_OCTAL_HPP_
#define MISERE_OCTAL_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "position.hpp"

namespace misere {

  // Rules of a finite octal game "d0.d1d2...dP".  Digit k governs moves that
  // remove exactly k tokens from one heap: bit 1 allows taking a whole heap
  // of size k, bit 2 leaving one nonempty heap, bit 4 leaving two.
  class GameCode {
   public:
    GameCode() = default;

    static GameCode parse(std::string_view text) {
      auto const dot = text.find('.');
      if (dot != 1 || text.size() < 3) {
        throw InputError("malformed game code \"" + std::string(text)
                         + "\", expected d.d+");
      }
      auto digit = [&](char c) -> std::uint8_t {
        if (c < '0' || c > '7') {
          throw InputError("game code \"" + std::string(text)
                           + "\": digit '" + std::string(1, c)
                           + "' is not an octal digit");
        }
        return static_cast<std::uint8_t>(c - '0');
      };
      GameCode code;
      code.pre_point_ = digit(text[0]);
      if (code.pre_point_ != 0 && code.pre_point_ != 4) {
        throw InputError("game code \"" + std::string(text)
                         + "\": pre-point digit must be 0 or 4");
      }
      for (auto c : text.substr(2)) {
        code.digits_.push_back(digit(c));
      }
      if (code.pre_point_ == 0
          && std::all_of(code.digits_.begin(), code.digits_.end(), [](auto d) {
               return d == 0;
             })) {
        throw InputError("game code \"" + std::string(text)
                         + "\" has only zero digits");
      }
      return code;
    }

    [[nodiscard]] std::uint8_t pre_point_digit() const noexcept {
      return pre_point_;
    }

    [[nodiscard]] std::vector<std::uint8_t> const& post_point_digits() const noexcept {
      return digits_;
    }

    // Number of places after the point.
    [[nodiscard]] std::size_t places() const noexcept {
      return digits_.size();
    }

    // Digit governing removal of k tokens; zero beyond the last place.
    [[nodiscard]] std::uint8_t digit(std::size_t k) const noexcept {
      if (k == 0) {
        return pre_point_;
      }
      return k <= digits_.size() ? digits_[k - 1] : 0;
    }

    [[nodiscard]] std::string to_string() const {
      std::string s(1, static_cast<char>('0' + pre_point_));
      s += '.';
      for (auto d : digits_) {
        s += static_cast<char>('0' + d);
      }
      return s;
    }

    friend bool operator==(GameCode const&, GameCode const&) = default;

   private:
    std::uint8_t              pre_point_ = 0;
    std::vector<std::uint8_t> digits_;
  };

  // All replacement positions t for legal moves h_f -> t, sorted and
  // without duplicates.
  inline std::vector<Position> moves_from_heap(GameCode const& code, heap_size f) {
    std::vector<Position> result;
    if (f == 0) {
      return result;
    }
    for (std::size_t k = 0; k <= code.places() && k <= f; ++k) {
      auto const d = code.digit(k);
      if (d == 0) {
        continue;
      }
      auto const rest = f - static_cast<heap_size>(k);
      if ((d & 1) != 0 && rest == 0) {
        result.emplace_back();
      }
      if ((d & 2) != 0 && rest >= 1 && k >= 1) {
        result.push_back(Position::heap(rest));
      }
      if ((d & 4) != 0 && rest >= 2) {
        for (heap_size a = 1; a <= rest / 2; ++a) {
          result.push_back(Position{a, rest - a});
        }
      }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

  // moves_from_heap for every heap size up to a bound, computed once.
  class MoveTable {
   public:
    MoveTable() = default;

    explicit MoveTable(GameCode code) : code_(std::move(code)) {}

    [[nodiscard]] GameCode const& code() const noexcept {
      return code_;
    }

    std::vector<Position> const& operator()(heap_size f) {
      while (table_.size() <= f) {
        table_.push_back(moves_from_heap(code_, static_cast<heap_size>(table_.size())));
      }
      return table_[f];
    }

   private:
    GameCode                           code_;
    std::deque<std::vector<Position>> table_;
  };

}  // namespace misere

#endif  // MISERE_OCTAL_HPP_
