#pragma once

// The `trcomm` command line. run() is separate from main() so tests can drive it in-process.
//
// Exit codes: 0 ok, 1 internal error, 2 falsified (witness found / verification
// failed), 3 budget exceeded, 64 usage, 65 violated precondition or invalid input.

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fuzz.hpp"
#include "trcomm/trcomm.hpp"

namespace trcomm::cli {

enum Exit : int { kOk = 0, kInternal = 1, kFalsified = 2, kBudget = 3, kUsage = 64, kPrecondition = 65 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
      return kBudget;
    case ErrorCode::WitnessVerificationFailed:
      return kInternal;
    default:
      return kPrecondition;
  }
}

namespace detail {

inline void emit(const std::string& text, const std::optional<std::string>& out_path, std::ostream& out) {
  if (out_path) {
    io::write_file_atomic(*out_path, text);
  } else {
    out << text;
  }
}

inline void emit_json(const io::Json& j, const std::optional<std::string>& out_path, std::ostream& out) {
  emit(j.dump(2) + "\n", out_path, out);
}

inline FieldSpec parse_field(const std::string& s) {
  if (s == "Q" || s == "q") return FieldSpec::rationals();
  std::string digits = s.rfind("F_", 0) == 0 ? s.substr(2) : s;
  try {
    std::size_t used = 0;
    unsigned long long p = std::stoull(digits, &used);
    if (used != digits.size()) throw std::invalid_argument(s);
    return FieldSpec::prime(p);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::MalformedInput, "field must be Q or a prime, got '" + s + "'");
  }
}

inline io::Json points_json(const std::vector<LatticePoint>& pts) {
  io::Json arr = io::Json::array();
  for (const auto& p : pts) arr.push_back(io::to_json(p));
  return arr;
}

/// Accepts a bare point array or any object with a "points" array (e.g. pack output).
inline std::vector<LatticePoint> read_points(const std::string& path) {
  io::Json j = io::parse_json(io::read_file(path));
  if (j.is_object()) {
    if (!j.contains("points")) throw Error(ErrorCode::MalformedInput, path + ": no 'points' array");
    return io::points_from_json(j.at("points"));
  }
  return io::points_from_json(j);
}

inline Budget seconds_budget(double seconds) {
  if (seconds <= 0) return std::nullopt;
  return std::chrono::duration<double>(seconds);
}

struct Cell {
  std::size_t m;
  std::uint64_t d;
  std::size_t size;
  bool optimal;
};

// Rows of the published tables: m and the largest d computed for it.
inline const std::vector<std::pair<std::size_t, std::uint64_t>>& table_rows() {
  static const std::vector<std::pair<std::size_t, std::uint64_t>> rows{{3, 12}, {4, 12}, {5, 10}, {6, 4}, {7, 2}, {8, 2}};
  return rows;
}

inline std::string render_table(const std::string& title, const std::vector<Cell>& cells, std::uint64_t max_d,
                                bool matrix_size) {
  std::ostringstream s;
  s << title << "\n";
  s << "m\\d";
  for (std::uint64_t d = 1; d <= max_d; ++d) s << std::setw(5) << d;
  s << "\n";
  std::size_t row_m = 0;
  std::uint64_t next_d = 1;
  for (const auto& c : cells) {
    if (c.m != row_m) {
      if (row_m) s << "\n";
      row_m = c.m;
      next_d = 1;
      s << std::setw(3) << c.m;
    }
    for (; next_d < c.d; ++next_d) s << std::setw(5) << "";
    std::string v = std::to_string(matrix_size ? (c.size + 1) / 2 : c.size);
    if (!c.optimal) v += "*";
    s << std::setw(5) << v;
    next_d = c.d + 1;
  }
  if (row_m) s << "\n";
  return s.str();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutator witnesses, separated-set packings and non-commutator certificates", "trcomm"};
  app.require_subcommand(1);
  std::optional<std::string> out_path;

  // pack
  std::size_t pack_m = 0;
  std::uint64_t pack_d = 0;
  double pack_budget = 60;
  std::string construction = "mis";
  auto* pack = app.add_subcommand("pack", "largest 2d-separated set in the simplex");
  pack->add_option("--m", pack_m, "number of variables")->required()->check(CLI::Range(1, 64));
  pack->add_option("--d", pack_d, "separation parameter")->required();
  pack->add_option("--budget", pack_budget, "seconds for the exact search (0 = unlimited)");
  pack->add_option("--construction", construction, "mis | quadratic | auto")
      ->check(CLI::IsMember({"mis", "quadratic", "auto"}));

  // tables
  double table_budget = 5;
  std::uint64_t table_max_d = 12;
  std::size_t table_max_m = 8;
  bool table_json = false;
  auto* tables = app.add_subcommand("tables", "recompute the separated-set and matrix-size tables");
  tables->add_option("--budget", table_budget, "seconds per cell (0 = unlimited)");
  tables->add_option("--max-d", table_max_d, "largest d to compute");
  tables->add_option("--max-m", table_max_m, "largest m to compute");
  tables->add_flag("--json", table_json, "emit JSON instead of text");

  // witness
  std::string witness_matrix, witness_mode, witness_clique;
  auto* witness = app.add_subcommand("witness", "decompose a matrix as a commutator [X, B]");
  witness->add_option("--matrix", witness_matrix, "matrix JSON file")->required();
  witness->add_option("--mode", witness_mode, "triangular | hollow | nilpotent")
      ->required()
      ->check(CLI::IsMember({"triangular", "hollow", "nilpotent"}));
  witness->add_option("--clique", witness_clique, "comma-separated ring elements (hollow mode)");

  // verify
  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "recompute [X, B] for a serialized witness");
  verify->add_option("witness", verify_file, "witness JSON file")->required();

  // certify
  std::size_t cert_m = 0;
  std::uint64_t cert_d = 0;
  std::optional<std::size_t> cert_n;
  std::optional<std::string> cert_set;
  bool cert_auto = false;
  std::string cert_field = "Q";
  double cert_budget = 60;
  auto* certify = app.add_subcommand("certify", "build a trace-zero non-commutator certificate");
  certify->add_option("--m", cert_m, "number of variables")->required();
  certify->add_option("--d", cert_d, "separation parameter")->required();
  certify->add_option("--n", cert_n, "matrix size (default: largest the set allows)");
  auto* set_opt = certify->add_option("--set", cert_set, "separated set JSON file");
  auto* auto_opt = certify->add_flag("--auto", cert_auto, "choose the set by packing");
  set_opt->excludes(auto_opt);
  certify->add_option("--field", cert_field, "Q or a prime p");
  certify->add_option("--budget", cert_budget, "seconds for the packing search with --auto");

  // verify-cert
  std::string vc_file;
  auto* verify_cert = app.add_subcommand("verify-cert", "re-check every hypothesis of a certificate");
  verify_cert->add_option("certificate", vc_file, "certificate JSON file")->required();

  // oracle
  std::optional<std::string> oracle_cert, oracle_matrix, oracle_resume;
  std::uint64_t oracle_p = 0;
  unsigned oracle_workers = 0;
  std::uint64_t oracle_budget = std::uint64_t{1} << 34;
  bool oracle_full = false;
  auto* oracle = app.add_subcommand("oracle", "exhaustive commutator search over a finite truncated ring");
  auto* cert_opt = oracle->add_option("--cert", oracle_cert, "certificate JSON file");
  auto* matrix_opt = oracle->add_option("--matrix", oracle_matrix, "matrix JSON file over a finite ring");
  cert_opt->excludes(matrix_opt);
  oracle->add_option("--p", oracle_p, "characteristic of the search ring (with --cert)");
  oracle->add_option("--workers", oracle_workers, "worker threads (0 = all cores)");
  oracle->add_option("--budget", oracle_budget, "maximum number of (B, C) pairs");
  oracle->add_option("--resume", oracle_resume, "progress file: resumed if present, updated during the run");
  oracle->add_flag("--no-normalize", oracle_full, "do not fix b_nn = c_nn = 0");

  // bound
  std::uint64_t bound_m = 0;
  auto* bound = app.add_subcommand("bound", "closed-form upper bounds for set size and matrix size");
  bound->add_option("--m", bound_m, "number of variables")->required();

  // fuzz
  std::uint64_t fuzz_seed = 1;
  std::size_t fuzz_count = 100;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "random witness round trips");
  fuzz_cmd->add_option("--seed", fuzz_seed, "RNG seed");
  fuzz_cmd->add_option("--count", fuzz_count, "cases per construction");

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--out", out_path, "write output to FILE (atomically) instead of stdout");
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*pack) {
      std::optional<SeparatedSet> set;
      bool optimal = false;
      std::string used = construction;
      if (construction == "quadratic") {
        set = quadratic_construction(pack_m, pack_d);
      } else {
        PackingResult r = best_separated_set(pack_m, pack_d, detail::seconds_budget(pack_budget));
        set = r.set;
        optimal = r.optimal;
        used = "mis";
        if (construction == "auto" && !optimal && pack_d + 1 >= pack_m) {
          SeparatedSet q = quadratic_construction(pack_m, pack_d);
          if (q.size() > set->size()) {
            set = q;
            used = "quadratic";
          }
        }
      }
      io::Json j{{"m", pack_m}, {"d", pack_d}, {"size", set->size()}, {"optimal", optimal}, {"construction", used},
                 {"points", detail::points_json(set->points())}};
      detail::emit_json(j, out_path, out);
      return kOk;
    }

    if (*tables) {
      std::vector<detail::Cell> cells;
      for (auto [m, last_d] : detail::table_rows()) {
        if (m > table_max_m) continue;
        for (std::uint64_t d = 1; d <= std::min(last_d, table_max_d); ++d) {
          PackingResult r = best_separated_set(m, d, detail::seconds_budget(table_budget));
          cells.push_back({m, d, r.set.size(), r.optimal});
        }
      }
      if (table_json) {
        io::Json arr = io::Json::array();
        for (const auto& c : cells) {
          arr.push_back({{"m", c.m}, {"d", c.d}, {"size", c.size}, {"n", matrix_size_from_set(c.size)}, {"optimal", c.optimal}});
        }
        detail::emit_json(io::Json{{"cells", arr}}, out_path, out);
      } else {
        std::uint64_t shown_d = 0;
        for (const auto& c : cells) shown_d = std::max(shown_d, c.d);
        std::string text =
            detail::render_table("Size of the largest 2d-separated set in Δ(m-1, 2d+1)", cells, shown_d, false) + "\n" +
            detail::render_table("Largest n with a trace-zero non-commutator in M_n(k[x1..xm])", cells, shown_d, true) +
            "\n* best found within the time budget, optimality not proved\n";
        detail::emit(text, out_path, out);
      }
      return kOk;
    }

    if (*witness) {
      Matrix a = io::matrix_from_json(io::parse_json(io::read_file(witness_matrix)));
      std::optional<WitnessPair> w;
      if (witness_mode == "triangular") {
        w = triangular_witness(a);
      } else if (witness_mode == "nilpotent") {
        w = nilpotent_witness(a);
      } else {
        std::vector<RingElem> elems;
        std::stringstream ss(witness_clique);
        for (std::string item; std::getline(ss, item, ',');) {
          elems.push_back(a.ctx().reduce(Polynomial::parse(a.ctx().field(), a.ctx().nvars(), item)));
        }
        w = hollow_witness(a, verify_clique(std::move(elems), a.ctx()));
      }
      detail::emit_json(io::to_json(*w), out_path, out);
      return kOk;
    }

    if (*verify) {
      try {
        WitnessPair w = io::witness_from_json(io::parse_json(io::read_file(verify_file)));
        detail::emit_json(io::Json{{"verified", true}, {"n", w.target().size()}}, out_path, out);
        return kOk;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WitnessVerificationFailed) throw;
        detail::emit_json(io::Json{{"verified", false}, {"reason", e.what()}}, out_path, out);
        return kFalsified;
      }
    }

    if (*certify) {
      if (!cert_set && !cert_auto) {
        err << "usage error: certify needs --set FILE or --auto\n";
        return kUsage;
      }
      FieldSpec field = detail::parse_field(cert_field);
      std::vector<LatticePoint> points;
      if (cert_set) {
        points = detail::read_points(*cert_set);
      } else if (cert_d + 1 >= cert_m) {
        points = quadratic_construction(cert_m, cert_d).points();
      } else {
        points = best_separated_set(cert_m, cert_d, detail::seconds_budget(cert_budget)).set.points();
      }
      std::size_t n = cert_n ? *cert_n : matrix_size_from_set(points.size());
      Certificate c = build_noncommutator(cert_m, cert_d, points, n, field);
      detail::emit(serialize(c), out_path, out);
      return kOk;
    }

    if (*verify_cert) {
      Certificate c = parse_certificate_unchecked(io::parse_json(io::read_file(vc_file)));
      ValidationReport report = validate_certificate(c);
      io::Json checks = io::Json::array();
      for (const auto& ch : report.checks) {
        io::Json item{{"name", ch.name}, {"passed", ch.passed}};
        if (!ch.passed) item["detail"] = ch.detail;
        checks.push_back(item);
      }
      detail::emit_json(io::Json{{"valid", report.ok()}, {"checks", checks}}, out_path, out);
      return report.ok() ? kOk : kPrecondition;
    }

    if (*oracle) {
      if (!oracle_cert && !oracle_matrix) {
        err << "usage error: oracle needs --cert FILE or --matrix FILE\n";
        return kUsage;
      }
      if (oracle_cert && oracle_p == 0) {
        err << "usage error: --cert needs --p P\n";
        return kUsage;
      }
      SearchOptions opts;
      opts.workers = oracle_workers;
      opts.budget = oracle_budget;
      opts.normalize = !oracle_full;
      if (oracle_resume) {
        opts.checkpoint = *oracle_resume;
        opts.resume = true;
      }
      Matrix target;
      if (oracle_cert) {
        Certificate c = certificate_from_json(io::parse_json(io::read_file(*oracle_cert)));
        target = certificate_search_matrix(c, oracle_p);
      } else {
        target = io::matrix_from_json(io::parse_json(io::read_file(*oracle_matrix)));
      }
      SearchOutcome o = exhaustive_commutator_search(target, opts);
      io::Json j{{"result", o.found ? "FoundWitness" : "NoWitness"},
                 {"ring", target.ctx().to_string()},
                 {"search_size", o.search_size},
                 {"pairs_examined", o.pairs_examined},
                 {"resumed_from", o.resumed_from},
                 {"seconds", o.seconds}};
      if (o.found) {
        j["B"] = io::to_json(*o.b);
        j["C"] = io::to_json(*o.c);
      }
      detail::emit_json(j, out_path, out);
      // A witness for a certificate falsifies it; for a plain matrix it is just the answer.
      return o.found && oracle_cert ? kFalsified : kOk;
    }

    if (*bound) {
      UpperBounds b = upper_bounds(bound_m);
      io::Json j{{"m", bound_m}, {"set_bound", b.set_bound}};
      j["matrix_bound"] = b.matrix_bound ? io::Json(*b.matrix_bound) : io::Json(nullptr);
      detail::emit_json(j, out_path, out);
      return kOk;
    }

    if (*fuzz_cmd) {
      fuzz::Rng rng(fuzz_seed);
      std::map<std::string, std::size_t> passed;
      std::size_t failures = 0;
      const RingCtx contexts[] = {RingCtx(FieldSpec::rationals(), 0), RingCtx(FieldSpec::prime(101), 0),
                                  RingCtx(FieldSpec::prime(3), 2, 3)};
      for (std::size_t k = 0; k < fuzz_count; ++k) {
        const RingCtx& ctx = contexts[k % 3];
        const std::size_t n = static_cast<std::size_t>(fuzz::uniform(rng, 1, 6));
        try {
          triangular_witness(fuzz::random_upper_trace_zero(ctx, n, rng));
          ++passed["triangular"];
        } catch (const Error&) {
          ++failures;
        }
        if (ctx.nvars() == 0) {
          try {
            hollow_witness(fuzz::random_hollow(ctx, n, rng), verify_clique(fuzz::random_clique(ctx, n - 1, rng), ctx));
            ++passed["hollow"];
            Matrix g = fuzz::random_invertible(ctx, n, rng);
            nilpotent_witness(g * fuzz::random_strictly_upper(ctx, n, rng) * inverse(g));
            ++passed["nilpotent"];
          } catch (const Error&) {
            ++failures;
          }
        }
      }
      io::Json j{{"seed", fuzz_seed}, {"count", fuzz_count}, {"passed", passed}, {"failures", failures}};
      detail::emit_json(j, out_path, out);
      return failures ? kInternal : kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace trcomm::cli
