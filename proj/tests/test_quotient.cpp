#include "catch_amalgamated.hpp"

#include <numeric>
#include <random>
#include <set>

#include <misere.hpp>

#include "support.hpp"

using namespace misere;
using test_support::names;

namespace {

  GameCode const g0123 = GameCode::parse("0.123");
  GameCode const g077  = GameCode::parse("0.77");

  std::vector<std::string> phi_names(QuotientAnalysis const& qa) {
    return names(qa.monoid, qa.phi.values);
  }

}  // namespace

TEST_CASE("0.123 quotient built from play matches the presentation", "[quotient][builder]") {
  auto const  built = build_quotient(g0123, 12, PlayConvention::misere);
  auto const& pres  = test_support::q0123();
  REQUIRE(built.monoid.size() == 20);
  CHECK(built.monoid.is_associative());
  CHECK(built.monoid.is_commutative());

  auto const f = is_isomorphic(built.monoid, pres.monoid);
  REQUIRE(f);
  for (element a = 0; a < 20; ++a) {
    for (element b = 0; b < 20; ++b) {
      REQUIRE((*f)[built.monoid.mul(a, b)] == pres.monoid.mul((*f)[a], (*f)[b]));
    }
  }
  for (heap_size h = 1; h <= 12; ++h) {
    CHECK((*f)[built.phi.values[h - 1]] == pres.phi.values[h - 1]);
  }
  for (element u = 0; u < 20; ++u) {
    CHECK(built.is_p(u) == pres.is_p((*f)[u]));
  }

  CHECK(phi_names(built)
        == std::vector<std::string>{"x", "e", "z", "z", "x", "b^2", "e", "a", "b", "x", "b^2", "e"});
  CHECK(names(built.monoid, built.p_elements())
        == std::vector<std::string>{"x", "xa", "z^2", "zb", "b^2"});
  CHECK(built.monoid.alphabet().names() == std::vector<std::string>{"x", "z", "a", "b"});
  CHECK(built.phi.claimed_period == PeriodCertificate{5, 5});
  CHECK_FALSE(built.certified_period);
}

TEST_CASE("builder action table equals the published one", "[quotient][builder]") {
  std::vector<std::vector<std::string>> const published{
      {"x", "z", "a", "b"},                 {"e", "xz", "xa", "xb"},
      {"xz", "z^2", "za", "zb"},            {"xa", "za", "e", "zb"},
      {"xb", "zb", "zb", "b^2"},            {"z", "xz^2", "xza", "xzb"},
      {"a", "xza", "x", "xzb"},             {"b", "xzb", "xzb", "xb^2"},
      {"xz^2", "z^3", "z^3", "b"},          {"xza", "z^3", "z", "b"},
      {"xzb", "b", "b", "zb^2"},            {"xb^2", "zb^2", "zb^2", "xb^2"},
      {"z^2", "xz^3", "xz^3", "xb"},        {"za", "xz^3", "xz", "xb"},
      {"zb", "xb", "xb", "xzb^2"},          {"b^2", "xzb^2", "xzb^2", "b^2"},
      {"xz^3", "z^2", "z^2", "zb"},         {"xzb^2", "b^2", "b^2", "xzb^2"},
      {"z^3", "xz^2", "xz^2", "xzb"},       {"zb^2", "xb^2", "xb^2", "zb^2"}};
  auto const built = build_quotient(g0123, 12, PlayConvention::misere);
  auto const& m    = built.monoid;
  REQUIRE(m.size() == 20);
  for (element u = 0; u < 20; ++u) {
    std::vector<std::string> row;
    for (auto g : {"x", "z", "a", "b"}) {
      row.push_back(m.name(action_table(m, g)[u]));
    }
    INFO(m.name(u));
    CHECK(row == published[u]);
  }
}

TEST_CASE("normal play quotient of 0.123 is the Klein group", "[quotient][builder]") {
  auto const qa = build_quotient(g0123, 12, PlayConvention::normal);
  REQUIRE(qa.monoid.size() == 4);
  CHECK(is_isomorphic(qa.monoid, klein_four()));
  CHECK(qa.p_elements() == std::vector<element>{qa.monoid.identity()});
  // Phi follows the nim sequence: equal values, equal classes.
  auto const g = grundy_sequence(g0123, 12);
  for (heap_size a = 1; a <= 12; ++a) {
    for (heap_size b = 1; b <= 12; ++b) {
      CHECK((qa.phi.values[a - 1] == qa.phi.values[b - 1]) == (g[a] == g[b]));
    }
  }
}

TEST_CASE("tiny builds", "[quotient][builder]") {
  auto const one = build_quotient(g0123, 1, PlayConvention::misere);
  CHECK(one.monoid.names() == std::vector<std::string>{"e", "x"});
  CHECK(names(one.monoid, one.p_elements()) == std::vector<std::string>{"x"});
  CHECK_THROWS_AS(build_quotient(g0123, 0, PlayConvention::misere), InputError);

  auto const k = build_quotient(g077, 4, PlayConvention::misere);
  CHECK(phi_names(k) == std::vector<std::string>{"x", "z", "xz", "x"});
}

TEST_CASE("the worked example position", "[quotient]") {
  auto const& qa = test_support::q0123();
  Position const p{1, 3, 4, 8, 9, 21};
  auto const u = phi_of_position(qa, p, true);
  CHECK(qa.monoid.name(u) == "zb^2");
  CHECK(predicted_outcome(qa, p, true) == Outcome::N);
  CHECK_THROWS_AS(phi_of_position(qa, p), RangeError);

  auto const move = find_winning_move(qa, p, true);
  REQUIRE(move);
  CHECK(move->heap == 3);
  CHECK(move->replacement.empty());
  CHECK(move->result == Position{1, 4, 8, 9, 21});
  CHECK(qa.monoid.name(phi_of_position(qa, move->result, true)) == "b^2");
  CHECK(genus(g0123, move->result).to_string() == "0^{02}");
  CHECK(outcome(g0123, move->result, PlayConvention::misere) == Outcome::P);
}

TEST_CASE("period detection", "[quotient]") {
  CHECK(detect_period(test_support::q0123().phi) == PeriodCertificate{5, 5});
  CHECK(detect_period(test_support::kayles().phi) == PeriodCertificate{71, 12});
  CHECK(detect_period(std::vector<element>{0, 1, 0, 1, 0, 1}) == PeriodCertificate{1, 2});
  CHECK(detect_period(std::vector<element>{0, 1, 2}) == std::nullopt);

  auto const qa = extend_phi(test_support::q0123(), 40);
  CHECK(qa.phi.n() == 40);
  for (heap_size h = 11; h <= 40; ++h) {
    CHECK(qa.phi.values[h - 1] == qa.phi.values[h - 6]);
  }
  CHECK(fold_heap(test_support::q0123(), 21, true) == 11);
}

TEST_CASE("representative genera of the 0.123 elements", "[quotient][genus]") {
  std::vector<std::pair<char const*, char const*>> const table{
      {"e", "0^{120}"},   {"x", "1^{031}"},   {"z", "2^{20}"},    {"a", "2^{1420}"},
      {"b", "1^{20}"},    {"xz", "3^{31}"},   {"xa", "3^{0531}"}, {"xb", "0^{31}"},
      {"z^2", "0^{02}"},  {"za", "0^{420}"},  {"zb", "3^{02}"},   {"b^2", "0^{02}"},
      {"xz^2", "1^{13}"}, {"xza", "1^{531}"}, {"xzb", "2^{13}"},  {"xb^2", "1^{13}"},
      {"z^3", "2^{20}"},  {"zb^2", "2^{20}"}, {"xz^3", "3^{31}"}, {"xzb^2", "3^{31}"}};
  auto const&         qa = test_support::q0123();
  PositionGenusSolver solver(g0123);
  auto const          reps = representatives(qa);
  for (auto const& [name, g] : table) {
    INFO(name);
    CHECK(element_genus(qa, qa.monoid.parse(name), solver, reps).to_string() == g);
  }
}

TEST_CASE("0.123 quotient predicts every small position", "[quotient][exhaustive]") {
  auto const&   qa = test_support::q0123();
  OutcomeSolver solver(g0123, PlayConvention::misere);
  std::vector<heap_size> sizes(12);
  std::iota(sizes.begin(), sizes.end(), 1);
  std::size_t checked = 0;
  for (auto const& p : test_support::positions_over(sizes, 5)) {
    INFO(p.to_string());
    REQUIRE(predicted_outcome(qa, p) == solver.outcome(p));
    ++checked;
  }
  CHECK(checked == 6188);
  // and a few large heaps through the period
  for (heap_size a = 13; a <= 30; ++a) {
    for (heap_size b = 1; b <= 30; ++b) {
      Position const p{a, b, 3};
      INFO(p.to_string());
      REQUIRE(predicted_outcome(qa, p, true) == solver.outcome(p));
    }
  }
}

TEST_CASE("equal Phi means indistinguishable in play", "[quotient][congruence]") {
  auto const&   qa = test_support::q0123();
  OutcomeSolver solver(g0123, PlayConvention::misere);
  auto const contexts = test_support::positions_over({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 3);
  std::vector<std::pair<Position, Position>> const pairs{
      {Position{6}, Position{11}},          // b^2
      {Position{3, 3, 3, 3}, Position{3, 3}},  // z^4 = z^2
      {Position{8, 9, 3}, Position{9}},     // abz = b
      {Position{9, 9, 9, 1}, Position{6}},  // b^3 x = b^2
      {Position{3, 3, 3, 8}, Position{4, 4}},  // z^3 a = z^2
      {Position{8, 8}, Position{}},         // a^2 = e
      {Position{2, 7, 12}, Position{}},     // dead heaps
  };
  for (auto const& [u, v] : pairs) {
    REQUIRE(phi_of_position(qa, u) == phi_of_position(qa, v));
    for (auto const& w : contexts) {
      INFO(u.to_string() << " vs " << v.to_string() << " in " << w.to_string());
      REQUIRE(solver.outcome(u * w) == solver.outcome(v * w));
    }
  }
  // Different classes are told apart by some context.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<heap_size> heap(1, 11);
  for (int i = 0; i < 200; ++i) {
    Position const u{heap(rng), heap(rng)};
    Position const v{heap(rng)};
    if (phi_of_position(qa, u) == phi_of_position(qa, v)) {
      continue;
    }
    bool separated = false;
    for (auto const& w : contexts) {
      separated = separated || solver.outcome(u * w) != solver.outcome(v * w);
    }
    INFO(u.to_string() << " vs " << v.to_string());
    CHECK(separated);
  }
}

TEST_CASE("kayles quotient from its presentation", "[quotient][kayles]") {
  auto const& qa = test_support::kayles();
  CHECK(qa.monoid.size() == 40);
  auto const p_names = names(qa.monoid, qa.p_elements());
  CHECK(std::set<std::string>(p_names.begin(), p_names.end())
        == std::set<std::string>{"x", "v", "t", "z^2", "xw", "xw^2", "xv^2", "xvt", "xvf"});
  // The published table spells some values in non-normal form (wz^2 is xwf).
  std::vector<std::string> const first{"x",   "z",    "xz",  "x",    "w",    "xz",  "z",
                                       "xz^2", "v",   "z",   "zw",   "t",    "xz^2", "z",
                                       "zwx", "xz^2", "v^2t", "xz",  "z",    "xvt", "wz^2",
                                       "zw",  "zwx",  "wz^2", "f",   "z",    "g",   "xwz^2"};
  for (std::size_t i = 0; i < first.size(); ++i) {
    INFO("heap " << i + 1);
    CHECK(qa.phi.values[i] == qa.monoid.parse(first[i]));
  }
}

TEST_CASE("kayles quotient agrees with Sibert-Conway", "[quotient][kayles][exhaustive]") {
  auto const& qa = test_support::kayles();
  std::vector<heap_size> sizes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 17, 20, 25, 27};
  std::size_t checked = 0;
  for (auto const& p : test_support::positions_over(sizes, 4)) {
    INFO(p.to_string());
    REQUIRE(predicted_outcome(qa, p) == sibert_conway_outcome(p).misere);
    ++checked;
  }
  CHECK(checked == 4845);

  OutcomeSolver solver(g077, PlayConvention::misere);
  for (auto const& p : test_support::positions_over({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 3)) {
    INFO(p.to_string());
    REQUIRE(predicted_outcome(qa, p) == solver.outcome(p));
  }
}
