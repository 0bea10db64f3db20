#ifndef MISERE_REWRITING_HPP_
#define MISERE_REWRITING_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "words.hpp"

namespace misere {

  struct Rule {
    ExpVec lhs;
    ExpVec rhs;
  };

  struct RewriteStep {
    std::size_t rule;
    ExpVec      before;
    ExpVec      after;
  };

  // A confluent, terminating system of monomial rules l -> r with r < l
  // under compare_monomials.  Normal forms are the order-minimal words of
  // their congruence classes.
  class RewriteSystem {
   public:
    RewriteSystem() = default;

    RewriteSystem(Alphabet alphabet, std::vector<Rule> rules)
        : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {}

    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }

    [[nodiscard]] std::vector<Rule> const& rules() const noexcept {
      return rules_;
    }

    [[nodiscard]] ExpVec reduce(ExpVec w) const {
      check_width(w);
      for (bool changed = true; changed;) {
        changed = false;
        for (auto const& r : rules_) {
          if (divides(r.lhs, w)) {
            w       = quotient(w, r.lhs) * r.rhs;
            changed = true;
          }
        }
      }
      return w;
    }

    [[nodiscard]] ExpVec reduce(std::string_view word) const {
      return reduce(alphabet_.parse(word));
    }

    // Leftmost-rule-first reduction, recording every step.
    [[nodiscard]] std::vector<RewriteStep> trace(ExpVec w) const {
      check_width(w);
      std::vector<RewriteStep> steps;
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
          if (divides(rules_[i].lhs, w)) {
            auto next = quotient(w, rules_[i].lhs) * rules_[i].rhs;
            steps.push_back({i, w, next});
            w       = std::move(next);
            changed = true;
            break;
          }
        }
      }
      return steps;
    }

    // Applies a uniformly chosen applicable rule at every step.
    template <typename URBG>
    [[nodiscard]] ExpVec reduce_randomly(ExpVec w, URBG& rng) const {
      check_width(w);
      std::vector<std::size_t> applicable;
      while (true) {
        applicable.clear();
        for (std::size_t i = 0; i < rules_.size(); ++i) {
          if (divides(rules_[i].lhs, w)) {
            applicable.push_back(i);
          }
        }
        if (applicable.empty()) {
          return w;
        }
        std::uniform_int_distribution<std::size_t> pick(0, applicable.size() - 1);
        auto const&                                r = rules_[applicable[pick(rng)]];
        w = quotient(w, r.lhs) * r.rhs;
      }
    }

    [[nodiscard]] bool equal(ExpVec const& a, ExpVec const& b) const {
      return reduce(a) == reduce(b);
    }

    [[nodiscard]] std::string format(Rule const& r) const {
      return "[ " + alphabet_.format(r.lhs, "*") + ", " + alphabet_.format(r.rhs, "*") + " ]";
    }

   private:
    void check_width(ExpVec const& w) const {
      if (w.size() != alphabet_.size()) {
        throw InputError("word has " + std::to_string(w.size()) + " exponents, expected "
                         + std::to_string(alphabet_.size()));
      }
    }

    Alphabet          alphabet_;
    std::vector<Rule> rules_;
  };

  // Knuth-Bendix completion for commutative monomial rewriting.  Critical
  // pairs come from rules whose left sides share a generator; after each
  // new rule the system is inter-reduced.  Termination follows from
  // Dickson's lemma, so max_rules only guards against bugs.
  inline RewriteSystem knuth_bendix(Alphabet const&              alphabet,
                                    std::vector<Relation> const& relations,
                                    std::size_t                  max_rules = 100'000) {
    struct Entry {
      Rule          rule;
      std::uint64_t id;
    };
    std::vector<Entry>                      rules;
    std::deque<std::pair<ExpVec, ExpVec>>   pending;
    std::set<std::pair<std::uint64_t, std::uint64_t>> checked;
    std::uint64_t                           next_id = 0;

    for (auto const& r : relations) {
      if (r.lhs.size() != alphabet.size() || r.rhs.size() != alphabet.size()) {
        throw InputError("relation width does not match the generator list");
      }
      pending.emplace_back(r.lhs, r.rhs);
    }

    auto normal_form = [&](ExpVec w) {
      for (bool changed = true; changed;) {
        changed = false;
        for (auto const& e : rules) {
          if (divides(e.rule.lhs, w)) {
            w       = quotient(w, e.rule.lhs) * e.rule.rhs;
            changed = true;
          }
        }
      }
      return w;
    };

    while (true) {
      while (!pending.empty()) {
        auto [a, b] = std::move(pending.front());
        pending.pop_front();
        a = normal_form(std::move(a));
        b = normal_form(std::move(b));
        if (a == b) {
          continue;
        }
        if (compare_monomials(a, b) < 0) {
          std::swap(a, b);
        }
        // rules made redundant by the new left side go back to the queue
        std::vector<Entry> kept;
        for (auto& e : rules) {
          if (divides(a, e.rule.lhs)) {
            pending.emplace_back(std::move(e.rule.lhs), std::move(e.rule.rhs));
          } else {
            kept.push_back(std::move(e));
          }
        }
        rules = std::move(kept);
        rules.push_back({{std::move(a), std::move(b)}, next_id++});
        for (auto& e : rules) {
          auto r = normal_form(e.rule.rhs);
          if (r != e.rule.rhs) {
            e.rule.rhs = std::move(r);
            e.id       = next_id++;
          }
        }
        if (rules.size() > max_rules) {
          throw LogicError("knuth_bendix exceeded " + std::to_string(max_rules) + " rules");
        }
      }
      bool added = false;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rules.size(); ++j) {
          auto key = std::minmax(rules[i].id, rules[j].id);
          if (!checked.insert(key).second) {
            continue;
          }
          auto const& ri = rules[i].rule;
          auto const& rj = rules[j].rule;
          if (!share_generator(ri.lhs, rj.lhs)) {
            continue;
          }
          auto const m  = lcm(ri.lhs, rj.lhs);
          auto       w1 = normal_form(quotient(m, ri.lhs) * ri.rhs);
          auto       w2 = normal_form(quotient(m, rj.lhs) * rj.rhs);
          if (w1 != w2) {
            pending.emplace_back(std::move(w1), std::move(w2));
            added = true;
          }
        }
      }
      if (!added && pending.empty()) {
        break;
      }
    }

    std::vector<Rule> result;
    for (auto& e : rules) {
      result.push_back(std::move(e.rule));
    }
    std::sort(result.begin(), result.end(), [](Rule const& x, Rule const& y) {
      return compare_monomials(x.lhs, y.lhs) < 0;
    });
    return RewriteSystem(alphabet, std::move(result));
  }

  inline RewriteSystem knuth_bendix(Presentation const& pres) {
    return knuth_bendix(pres.alphabet, pres.relations);
  }

}  // namespace misere

#endif  // MISERE_REWRITING_HPP_
