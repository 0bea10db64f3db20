#ifndef MISERE_SERIALIZE_HPP_
#define MISERE_SERIALIZE_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "quotient.hpp"
#include "structure.hpp"
#include "verifier.hpp"

// Canonical JSON: sorted keys, two-space indent, integers only, trailing
// newline.  Loading and re-dumping an analysis reproduces the same bytes.

namespace misere {

  using json = nlohmann::json;

  inline constexpr char const* analysis_format = "misere-quotient/1";

  namespace detail {

    inline json period_json(std::optional<PeriodCertificate> const& p) {
      if (!p) {
        return nullptr;
      }
      return json::array({p->index, p->period});
    }

    inline std::optional<PeriodCertificate> period_from(json const& j) {
      if (j.is_null()) {
        return std::nullopt;
      }
      if (!j.is_array() || j.size() != 2) {
        throw InputError("period must be [index, period] or null");
      }
      return PeriodCertificate{j[0].get<heap_size>(), j[1].get<heap_size>()};
    }

  }  // namespace detail

  inline json to_json(QuotientAnalysis const& qa) {
    auto const& m = qa.monoid;
    json        j;
    j["format"]           = analysis_format;
    j["game"]             = qa.code.to_string();
    j["play"]             = to_string(qa.play);
    j["n"]                = qa.n;
    j["generators"]       = m.alphabet().names();
    j["generator_elements"] = m.generators();
    j["elements"]         = m.names();
    j["words"]            = m.words();
    j["table"]            = m.table();
    j["phi"]              = qa.phi.values;
    j["claimed_period"]   = detail::period_json(qa.phi.claimed_period);
    j["p_set"]            = qa.p_elements();
    j["verified_to"]      = qa.verified_to ? json(*qa.verified_to) : json(nullptr);
    j["certified_period"] = detail::period_json(qa.certified_period);
    return j;
  }

  inline QuotientAnalysis analysis_from_json(json const& j) {
    try {
      if (j.at("format") != analysis_format) {
        throw InputError("unsupported analysis format " + j.at("format").dump());
      }
      QuotientAnalysis qa;
      qa.code = GameCode::parse(j.at("game").get<std::string>());
      qa.play = parse_play(j.at("play").get<std::string>());
      qa.n    = j.at("n").get<heap_size>();
      Alphabet alpha(j.at("generators").get<std::vector<std::string>>());
      qa.monoid = FiniteMonoid(alpha,
                               j.at("words").get<std::vector<ExpVec>>(),
                               j.at("table").get<std::vector<std::vector<element>>>(),
                               j.at("generator_elements").get<std::vector<element>>());
      if (qa.monoid.names() != j.at("elements").get<std::vector<std::string>>()) {
        throw InputError("element names do not match the stored words");
      }
      auto const size = qa.monoid.size();
      if (!qa.monoid.is_commutative() || !qa.monoid.is_associative()) {
        throw InputError("stored table is not a commutative monoid");
      }
      qa.phi.values = j.at("phi").get<std::vector<element>>();
      for (auto v : qa.phi.values) {
        if (v >= size) {
          throw InputError("phi value out of range");
        }
      }
      qa.phi.claimed_period = detail::period_from(j.at("claimed_period"));
      qa.p_set.assign(size, false);
      for (auto u : j.at("p_set").get<std::vector<element>>()) {
        if (u >= size) {
          throw InputError("P element out of range");
        }
        qa.p_set[u] = true;
      }
      if (!j.at("verified_to").is_null()) {
        qa.verified_to = j.at("verified_to").get<heap_size>();
      }
      qa.certified_period = detail::period_from(j.at("certified_period"));
      return qa;
    } catch (json::exception const& e) {
      throw InputError(std::string("malformed analysis JSON: ") + e.what());
    }
  }

  inline std::string canonical_dump(json const& j) {
    return j.dump(2) + "\n";
  }

  inline json parse_json(std::string const& text) {
    try {
      return json::parse(text);
    } catch (json::exception const& e) {
      throw InputError(std::string("invalid JSON: ") + e.what());
    }
  }

  inline std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InputError("cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  // Written to a temporary and renamed, so readers never see a partial file.
  inline void write_file_atomic(std::filesystem::path const& path, std::string const& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out || !(out << text) || !out.flush()) {
        throw InputError("cannot write " + tmp.string());
      }
    }
    std::filesystem::rename(tmp, path);
  }

  inline void save_analysis(QuotientAnalysis const& qa, std::filesystem::path const& path) {
    write_file_atomic(path, canonical_dump(to_json(qa)));
  }

  inline QuotientAnalysis load_analysis(std::filesystem::path const& path) {
    return analysis_from_json(parse_json(read_file(path)));
  }

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(QuotientAnalysis const& qa, VerificationReport const& r) {
    auto const& m = qa.monoid;
    auto        names = [&](std::vector<element> const& xs) {
      std::vector<std::string> out;
      for (auto u : xs) {
        out.push_back(m.name(u));
      }
      return out;
    };
    auto failure = [&](NPFailure const& f) {
      return json{{"omega", m.name(f.omega)}, {"u", f.u}, {"s", m.name(f.s)}};
    };
    json j;
    j["n"]      = r.n;
    j["engine"] = r.engine;
    j["passed"] = r.passed;
    j["stats"]  = r.stats;
    j["pp_violations"] = json::array();
    for (auto const& t : r.pp_violations) {
      j["pp_violations"].push_back({{"basis", m.name(t.basis)},
                                    {"move", {{"from", t.pair.f}, {"to", t.pair.t.heaps()}}},
                                    {"pair", names({t.pair.lhs, t.pair.rhs})},
                                    {"translate", names({t.from, t.to})}});
    }
    j["np_failures"] = json::array();
    for (auto const& f : r.np_failures) {
      j["np_failures"].push_back(failure(f));
    }
    j["terminal_violations"] = json::array();
    for (auto const& f : r.terminal_violations) {
      j["terminal_violations"].push_back(failure(f));
    }
    json per = json::object();
    for (auto const& [u, k] : r.cases_per_omega) {
      per[m.name(u)] = k;
    }
    j["cases_per_omega"] = per;
    return j;
  }

  inline json structure_json(QuotientAnalysis const& qa) {
    auto const& m     = qa.monoid;
    auto        names = [&](std::vector<element> const& xs) {
      std::vector<std::string> out;
      for (auto u : xs) {
        out.push_back(m.name(u));
      }
      return out;
    };
    json       j;
    auto const e = idempotents(m);
    j["idempotents"] = names(e);
    j["hasse_edges"] = json::array();
    for (auto [g, f] : hasse_edges(m, e)) {
      j["hasse_edges"].push_back(names({g, f}));
    }
    j["tau_classes"] = json::array();
    for (auto const& c : mutual_divisibility_classes(m)) {
      bool const group = std::any_of(c.begin(), c.end(), [&](element u) { return m.mul(u, u) == u; });
      j["tau_classes"].push_back({{"elements", names(c)}, {"maximal_subgroup", group}});
    }
    auto const kernel = kernel_ideal(m);
    j["kernel"]       = {{"elements", names(kernel)}, {"rank", ranks(m)[kernel.front()]}};
    auto const ps     = principal_series(m);
    j["principal_series"] = json::array();
    for (std::size_t i = 0; i < ps.chain.size(); ++i) {
      j["principal_series"].push_back({{"ideal", names(ps.chain[i])},
                                       {"factor", names(ps.factors[i].elements)},
                                       {"label", ps.factors[i].label}});
    }
    j["tame_islands"] = json::array();
    for (auto const& isl : tame_islands(qa)) {
      json members = json::array();
      for (std::size_t i = 0; i < isl.elements.size(); ++i) {
        members.push_back({{"element", m.name(isl.elements[i])},
                           {"nim", isl.nim_values[i]},
                           {"genus", isl.nim_genera[i].to_string()}});
      }
      j["tame_islands"].push_back({{"identity", m.name(isl.identity)}, {"members", members}});
    }
    j["verified"] = qa.verified_to.has_value() || qa.certified_period.has_value();
    return j;
  }

}  // namespace misere

#endif  // MISERE_SERIALIZE_HPP_
