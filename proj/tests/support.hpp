#ifndef MISERE_TESTS_SUPPORT_HPP_
#define MISERE_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include <misere.hpp>

namespace test_support {

  inline std::string data_path(std::string const& name) {
    return std::string(MISERE_DATA_DIR) + "/" + name;
  }

  inline misere::QuotientAnalysis const& q0123() {
    static auto const qa = misere::analysis_from_presentation(
        misere::Presentation::load(data_path("q0123.pres")));
    return qa;
  }

  inline misere::QuotientAnalysis const& kayles() {
    static auto const qa = misere::analysis_from_presentation(
        misere::Presentation::load(data_path("kayles.pres")));
    return qa;
  }

  inline std::vector<std::string> names(misere::FiniteSemigroup const& s,
                                        std::vector<misere::element> const& xs) {
    std::vector<std::string> out;
    for (auto u : xs) {
      out.push_back(s.name(u));
    }
    return out;
  }

  // All positions with at most k heaps drawn from sizes, as sorted multisets.
  inline std::vector<misere::Position> positions_over(std::vector<misere::heap_size> const& sizes,
                                                      std::size_t                           k) {
    std::vector<misere::Position> out{misere::Position{}};
    std::vector<misere::heap_size> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (cur.size() == k) {
        return;
      }
      for (std::size_t i = from; i < sizes.size(); ++i) {
        cur.push_back(sizes[i]);
        out.emplace_back(cur);
        self(self, i);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

}  // namespace test_support

#endif  // MISERE_TESTS_SUPPORT_HPP_
