// Command-line front end: analyze, verify, certify, outcome, genus, reduce,
// structure.  Exit codes: 0 ok, 2 verification failed, 3 budget exceeded,
// 4 input error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "misere.hpp"

namespace {

  using namespace misere;

  enum Exit : int { ok = 0, failed = 2, budget = 3, input = 4, internal = 1 };

  struct Options {
    std::string                code;
    bool                       normal = false;
    bool                       misere = false;
    heap_size                  n      = 0;
    std::string                certify;
    std::string                out;
    std::uint64_t              seed   = 20070101;
    std::size_t                budget = default_node_budget;
    std::string                presentation;
    std::string                engine = "automatic";
    std::string                file;
    std::string                word;
    std::string                position;
    std::string                tree;
  };

  PeriodCertificate parse_period(std::string const& s) {
    auto const comma = s.find(',');
    if (comma == std::string::npos) {
      throw InputError("--certify expects r0,p");
    }
    try {
      return {static_cast<heap_size>(std::stoul(s.substr(0, comma))),
              static_cast<heap_size>(std::stoul(s.substr(comma + 1)))};
    } catch (std::exception const&) {
      throw InputError("--certify expects two integers r0,p");
    }
  }

  std::string names(QuotientAnalysis const& qa, std::vector<element> const& xs) {
    std::string s;
    for (auto u : xs) {
      s += (s.empty() ? "" : " ") + qa.monoid.name(u);
    }
    return s;
  }

  void print_summary(QuotientAnalysis const& qa) {
    std::cout << "game " << qa.code.to_string() << " (" << to_string(qa.play) << "), heaps to "
              << qa.phi.n() << "\n";
    std::cout << qa.monoid.size() << " elements: " << names(qa, [&] {
      std::vector<element> all(qa.monoid.size());
      for (element u = 0; u < all.size(); ++u) {
        all[u] = u;
      }
      return all;
    }()) << "\n";
    std::cout << "phi:";
    for (auto v : qa.phi.values) {
      std::cout << " " << qa.monoid.name(v);
    }
    std::cout << "\nP: " << names(qa, qa.p_elements()) << "\n";
    if (qa.play == PlayConvention::normal) {
      std::cout << "nim values:";
      auto const g = grundy_sequence(qa.code, qa.phi.n());
      for (heap_size h = 1; h < g.size(); ++h) {
        std::cout << " " << g[h];
      }
      std::cout << "\n";
    }
    if (qa.phi.claimed_period) {
      std::cout << "apparent period " << qa.phi.claimed_period->period << " from heap "
                << qa.phi.claimed_period->index << "\n";
    }
  }

  void print_report(QuotientAnalysis const& qa, VerificationReport const& r) {
    std::cout << "verification to heap " << r.n << " (" << r.engine << "): "
              << (r.passed ? "passed" : "FAILED") << "\n";
    for (auto const& t : r.pp_violations) {
      std::cout << "  P->P translate (" << qa.monoid.name(t.from) << "," << qa.monoid.name(t.to)
                << ") basis " << qa.monoid.name(t.basis) << " move " << t.pair.f << "->"
                << t.pair.t.to_string() << "\n";
    }
    for (auto const& f : r.np_failures) {
      std::cout << "  N position " << qa.monoid.name(f.omega) << " without a P option: U="
                << Position(f.u).to_string() << " s=" << qa.monoid.name(f.s) << "\n";
    }
    for (auto const& f : r.terminal_violations) {
      std::cout << "  terminal position " << Position(f.u).to_string() << " asserted "
                << (qa.is_p(f.omega) ? "P" : "N") << "\n";
    }
  }

  void write_json(std::string const& path, json const& j) {
    if (path.empty() || path == "-") {
      std::cout << canonical_dump(j);
    } else {
      write_file_atomic(path, canonical_dump(j));
      std::cout << "wrote " << path << "\n";
    }
  }

  VerifierConfig verifier_config(Options const& o) {
    VerifierConfig cfg;
    cfg.engine = parse_engine(o.engine);
    return cfg;
  }

  // Extends Phi by its period when a check needs heaps past the table.
  void ensure_range(QuotientAnalysis& qa, heap_size n, std::optional<PeriodCertificate> hint) {
    if (n <= qa.phi.n()) {
      return;
    }
    if (!qa.phi.claimed_period) {
      qa.phi.claimed_period = hint;
    }
    if (!qa.phi.claimed_period) {
      throw RangeError("Phi is known to heap " + std::to_string(qa.phi.n())
                       + " only and no period is available to extend it");
    }
    qa = extend_phi(qa, n);
  }

  int run_certify(QuotientAnalysis& qa, PeriodCertificate period, VerifierConfig const& cfg) {
    auto const window = 2 * period.index + period.period + static_cast<heap_size>(qa.code.places());
    ensure_range(qa, window - 1, period);
    auto const t0     = std::chrono::steady_clock::now();
    auto const report = certify_period(qa, period.index, period.period, cfg);
    auto const secs   = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    print_report(qa, report);
    std::cout << "certificate (" << period.index << ", " << period.period << "): "
              << (report.passed ? "Phi has ultimate period " + std::to_string(period.period)
                                : std::string("not established"))
              << " [" << secs << " s]\n";
    return report.passed ? ok : failed;
  }

  int cmd_analyze(Options const& o) {
    QuotientAnalysis qa;
    if (!o.presentation.empty()) {
      auto pres = Presentation::load(o.presentation);
      qa        = analysis_from_presentation(pres, o.code.empty() ? std::nullopt
                                                                   : std::optional(GameCode::parse(o.code)));
    } else {
      if (o.code.empty()) {
        throw InputError("analyze needs a game code or --presentation");
      }
      auto const code = GameCode::parse(o.code);
      if (o.n == 0) {
        throw InputError("-n must be positive");
      }
      BuilderConfig bc;
      bc.node_budget = o.budget;
      qa = build_quotient(code, o.n, o.normal ? PlayConvention::normal : PlayConvention::misere, bc);
    }
    auto const n   = o.n == 0 ? qa.phi.n() : o.n;
    auto const cfg = verifier_config(o);
    ensure_range(qa, n, std::nullopt);
    print_summary(qa);
    auto report = verify_to_heap(qa, n, cfg);
    print_report(qa, report);
    if (report.passed) {
      qa.verified_to = n;
    }
    int code = report.passed ? ok : failed;
    if (report.passed && !o.certify.empty()) {
      code = run_certify(qa, parse_period(o.certify), cfg);
    }
    if (!o.out.empty()) {
      save_analysis(qa, o.out);
      std::cout << "wrote " << o.out << "\n";
    }
    return code;
  }

  int cmd_verify(Options const& o) {
    auto       qa  = load_analysis(o.file);
    auto const n   = o.n == 0 ? qa.n : o.n;
    ensure_range(qa, n, std::nullopt);
    auto const report = verify_to_heap(qa, n, verifier_config(o));
    print_report(qa, report);
    if (!o.out.empty()) {
      write_json(o.out, to_json(qa, report));
    }
    return report.passed ? ok : failed;
  }

  int cmd_certify(Options const& o) {
    if (o.certify.empty()) {
      throw InputError("certify needs --certify r0,p");
    }
    auto qa   = load_analysis(o.file);
    auto code = run_certify(qa, parse_period(o.certify), verifier_config(o));
    if (code == ok && !o.out.empty()) {
      save_analysis(qa, o.out);
      std::cout << "wrote " << o.out << "\n";
    }
    return code;
  }

  int cmd_outcome(Options const& o) {
    auto const qa = load_analysis(o.file);
    if (!qa.verified_to && !qa.certified_period) {
      throw InputError("analysis has not been verified; run verify first");
    }
    auto const p = Position::parse(o.position);
    for (auto h : p.heaps()) {
      if (h > qa.verified_to.value_or(0) && !qa.certified_period) {
        throw RangeError("heap " + std::to_string(h) + " is beyond the verified range "
                         + std::to_string(qa.verified_to.value_or(0)));
      }
    }
    auto const u = phi_of_position(qa, p);
    std::cout << p.to_string() << ": element " << qa.monoid.name(u) << ", "
              << to_string(qa.is_p(u) ? Outcome::P : Outcome::N) << "\n";
    if (!qa.is_p(u)) {
      if (auto mv = find_winning_move(qa, p)) {
        std::cout << "winning move: ";
        if (mv->replacement.empty()) {
          std::cout << "remove heap " << mv->heap << " entirely";
        } else {
          std::cout << "heap " << mv->heap << " -> " << mv->replacement.to_string();
        }
        std::cout << ", leaving " << mv->result.to_string() << " = "
                  << qa.monoid.name(phi_of_position(qa, mv->result)) << "\n";
      } else if (!p.empty()) {
        std::cout << "no winning move found (analysis inconsistent)\n";
        return failed;
      }
    }
    return ok;
  }

  int cmd_genus(Options const& o) {
    auto const code = GameCode::parse(o.code);
    auto const p    = Position::parse(o.position);
    if (o.tree.empty()) {
      PositionGenusSolver solver(code, o.budget);
      std::cout << solver.genus(p).to_short_string() << "\n";
      return ok;
    }
    auto const t = GameTree::parse(read_file(o.tree));
    TreeSolver solver;
    std::cout << solver.genus({tree_of_position(code, p), t}).to_short_string() << "\n";
    return ok;
  }

  int cmd_reduce(Options const& o) {
    auto const pres = Presentation::load(o.file);
    auto const rws  = knuth_bendix(pres);
    auto const w    = pres.alphabet.parse(o.word);
    for (auto const& step : rws.trace(w)) {
      std::cout << "  " << pres.alphabet.format(step.before) << "  --" << rws.format(rws.rules()[step.rule])
                << "-->  " << pres.alphabet.format(step.after) << "\n";
    }
    std::cout << pres.alphabet.format(rws.reduce(w)) << "\n";
    return ok;
  }

  int cmd_structure(Options const& o) {
    auto const qa = load_analysis(o.file);
    if (!qa.verified_to && !qa.certified_period) {
      std::cerr << "warning: analysis is not verified\n";
    }
    write_json(o.out, structure_json(qa));
    return ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Misere quotients of octal games"};
  app.require_subcommand(1);
  Options o;

  auto play_flags = [&](CLI::App* sub) {
    auto* m = sub->add_flag("--misere", o.misere, "misere play (default)");
    auto* n = sub->add_flag("--normal", o.normal, "normal play");
    m->excludes(n);
  };
  auto engine_opt = [&](CLI::App* sub) {
    sub->add_option("--engine", o.engine,
                    "verifier: automatic, naive, heap_class, minimal_class, closure");
  };

  auto* analyze = app.add_subcommand("analyze", "build, verify and optionally certify a quotient");
  analyze->add_option("code", o.code, "octal game code, e.g. 0.123");
  play_flags(analyze);
  analyze->add_option("-n", o.n, "heap bound");
  analyze->add_option("--certify", o.certify, "certify period r0,p");
  analyze->add_option("--out", o.out, "analysis JSON output");
  analyze->add_option("--seed", o.seed, "seed for sampled checks");
  analyze->add_option("--budget", o.budget, "node budget for game-tree search");
  analyze->add_option("--presentation", o.presentation, "take the quotient from a presentation file");
  engine_opt(analyze);

  auto* verify = app.add_subcommand("verify", "check an analysis to a heap bound");
  verify->add_option("analysis", o.file)->required();
  verify->add_option("-n", o.n, "heap bound (default: the analysis range)");
  verify->add_option("--out", o.out, "report JSON output");
  engine_opt(verify);

  auto* certify = app.add_subcommand("certify", "certify an ultimate period");
  certify->add_option("analysis", o.file)->required();
  certify->add_option("--certify", o.certify, "r0,p")->required();
  certify->add_option("--out", o.out, "updated analysis JSON");
  engine_opt(certify);

  auto* outcome = app.add_subcommand("outcome", "outcome and winning move of a position");
  outcome->add_option("analysis", o.file)->required();
  outcome->add_option("position", o.position, "e.g. [1,3,4,8,9,21]")->required();

  auto* genus = app.add_subcommand("genus", "genus symbol of a position");
  genus->add_option("code", o.code)->required();
  genus->add_option("position", o.position, "heap size or [a,b,...]")->required();
  genus->add_option("--tree", o.tree, "file with an extra game tree added to the position");
  genus->add_option("--budget", o.budget, "node budget");

  auto* reduce = app.add_subcommand("reduce", "normal form of a word");
  reduce->add_option("presentation", o.file)->required();
  reduce->add_option("word", o.word)->required();

  auto* structure = app.add_subcommand("structure", "idempotents, ideals and islands");
  structure->add_option("analysis", o.file)->required();
  structure->add_option("--out", o.out, "report JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? ok : input;
  }

  try {
    if (*analyze) {
      return cmd_analyze(o);
    }
    if (*verify) {
      return cmd_verify(o);
    }
    if (*certify) {
      return cmd_certify(o);
    }
    if (*outcome) {
      return cmd_outcome(o);
    }
    if (*genus) {
      return cmd_genus(o);
    }
    if (*reduce) {
      return cmd_reduce(o);
    }
    if (*structure) {
      return cmd_structure(o);
    }
  } catch (BudgetExceeded const& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return budget;
  } catch (InputError const& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input;
  } catch (RangeError const& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return input;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return internal;
  }
  return internal;
}
