#ifndef MISERE_POSITION_HPP_
#define MISERE_POSITION_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace misere {

  using heap_size = std::uint32_t;

  // A finite multiset of heap sizes, i.e. an element of the free commutative
  // monoid on the heap alphabet.  Heaps are kept sorted ascending, so equal
  // multisets compare and hash equal.  The empty position is the endgame.
  class Position {
   public:
    Position() = default;

    Position(std::initializer_list<heap_size> heaps) : heaps_(heaps) {
      normalise();
    }

    explicit Position(std::vector<heap_size> heaps) : heaps_(std::move(heaps)) {
      normalise();
    }

    static Position heap(heap_size h) {
      Position p;
      p.heaps_.push_back(h);
      return p;
    }

    [[nodiscard]] std::span<heap_size const> heaps() const noexcept {
      return heaps_;
    }

    [[nodiscard]] bool empty() const noexcept {
      return heaps_.empty();
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return heaps_.size();
    }

    [[nodiscard]] heap_size tokens() const noexcept {
      heap_size total = 0;
      for (auto h : heaps_) {
        total += h;
      }
      return total;
    }

    [[nodiscard]] heap_size max_heap() const noexcept {
      return heaps_.empty() ? 0 : heaps_.back();
    }

    [[nodiscard]] std::size_t count(heap_size h) const noexcept {
      auto [lo, hi] = std::equal_range(heaps_.begin(), heaps_.end(), h);
      return static_cast<std::size_t>(hi - lo);
    }

    // Multiset union, written multiplicatively in the free monoid.
    [[nodiscard]] Position operator*(Position const& other) const {
      Position result;
      result.heaps_.reserve(heaps_.size() + other.heaps_.size());
      std::merge(heaps_.begin(),
                 heaps_.end(),
                 other.heaps_.begin(),
                 other.heaps_.end(),
                 std::back_inserter(result.heaps_));
      return result;
    }

    Position& operator*=(Position const& other) {
      *this = *this * other;
      return *this;
    }

    // Removes one heap of size h, which must be present.
    [[nodiscard]] Position without(heap_size h) const {
      Position result = *this;
      auto     it = std::lower_bound(result.heaps_.begin(), result.heaps_.end(), h);
      if (it == result.heaps_.end() || *it != h) {
        throw LogicError("Position::without: heap " + std::to_string(h)
                         + " not present");
      }
      result.heaps_.erase(it);
      return result;
    }

    // Replace one heap of size h by the heaps of t.
    [[nodiscard]] Position replace(heap_size h, Position const& t) const {
      return without(h) * t;
    }

    friend bool operator==(Position const&, Position const&) = default;
    friend auto operator<=>(Position const&, Position const&) = default;

    // Compact byte string used as a memo key.
    [[nodiscard]] std::string key() const {
      std::string k;
      k.reserve(heaps_.size() * 2);
      for (auto h : heaps_) {
        k.push_back(static_cast<char>(h & 0xFF));
        k.push_back(static_cast<char>((h >> 8) & 0xFF));
      }
      return k;
    }

    [[nodiscard]] std::string to_string() const {
      std::string s = "[";
      for (std::size_t i = 0; i < heaps_.size(); ++i) {
        if (i != 0) {
          s += ",";
        }
        s += std::to_string(heaps_[i]);
      }
      return s + "]";
    }

    // Parses "[1,3,4]", "1 3 4" or "1,3,4"; "[]" and "" are the endgame.
    static Position parse(std::string_view text) {
      std::vector<heap_size> heaps;
      std::size_t            i = 0;
      auto                   skip = [&] {
        while (i < text.size()
               && (std::isspace(static_cast<unsigned char>(text[i]))
                   || text[i] == ',' || text[i] == '[' || text[i] == ']')) {
          ++i;
        }
      };
      skip();
      while (i < text.size()) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
          throw InputError("invalid position \"" + std::string(text) + "\"");
        }
        std::uint64_t value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
          if (value > 0xFFFF) {
            throw InputError("heap size too large in \"" + std::string(text) + "\"");
          }
          ++i;
        }
        if (value == 0) {
          throw InputError("heap sizes must be positive in \"" + std::string(text)
                           + "\"");
        }
        heaps.push_back(static_cast<heap_size>(value));
        skip();
      }
      return Position(std::move(heaps));
    }

   private:
    void normalise() {
      std::erase(heaps_, heap_size{0});
      std::sort(heaps_.begin(), heaps_.end());
    }

    std::vector<heap_size> heaps_;
  };

}  // namespace misere

template <>
struct std::hash<misere::Position> {
  std::size_t operator()(misere::Position const& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : p.heaps()) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

#endif  // MISERE_POSITION_HPP_
