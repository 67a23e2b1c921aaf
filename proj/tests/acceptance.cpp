// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <iomanip>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fuzz.hpp"
#include "trcomm/trcomm.hpp"

using namespace trcomm;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %-28s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Largest separated set sizes, d = 1, 2, ...
const std::map<std::size_t, std::vector<std::size_t>> kSetTable{
    {3, {4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4}},
    {4, {5, 6, 6, 7, 7, 7, 7, 7, 8, 8, 8, 8}},
    {5, {7, 10, 10, 10, 11, 11, 12, 12, 12, 13}},
    {6, {10, 12, 14, 15}},
    {7, {14, 18}},
    {8, {16, 24}},
};

// Largest non-commutator size n, d = 2, 3, ...
const std::map<std::size_t, std::vector<std::size_t>> kMatrixTable{
    {4, {3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4}},
    {5, {5, 5, 5, 6, 6, 6, 6, 6, 7}},
    {6, {6, 7, 8}},
    {7, {9}},
    {8, {12}},
};

struct Cell {
  std::size_t m;
  std::uint64_t d;
  std::size_t size;
  bool optimal;
  double seconds;
};

std::vector<SeparatedSet> produced_sets;
std::vector<Certificate> produced_certificates;

Cell solve(std::size_t m, std::uint64_t d, double budget) {
  auto t = Clock::now();
  PackingResult r = best_separated_set(m, d, std::chrono::duration<double>(budget));
  produced_sets.push_back(r.set);
  if (r.set.size() >= 3) produced_certificates.push_back(build_noncommutator(r.set, matrix_size_from_set(r.set), FieldSpec::rationals()));
  return {m, d, r.set.size(), r.optimal, since(t)};
}

std::vector<Cell> criterion_tables() {
  std::vector<Cell> cells;
  // Cells that must be solved to optimality, 5 minutes each.
  const std::vector<std::pair<std::size_t, std::uint64_t>> required{{3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {4, 3},
                                                                    {5, 1}, {5, 2}, {6, 1}, {7, 1}, {8, 1}};
  bool ok = true;
  std::ostringstream detail;
  double worst = 0;
  for (auto [m, d] : required) {
    Cell c = solve(m, d, 300);
    cells.push_back(c);
    worst = std::max(worst, c.seconds);
    const std::size_t expected = kSetTable.at(m)[d - 1];
    if (!c.optimal || c.size != expected || c.seconds > 300) {
      ok = false;
      detail << " (" << m << "," << d << ")=" << c.size << (c.optimal ? "" : "*") << "!=" << expected;
    }
  }
  // Every other published cell: best-found may fall short but never exceed, and must match when optimal.
  std::size_t optimal_extra = 0, open_extra = 0;
  for (const auto& [m, row] : kSetTable) {
    for (std::uint64_t d = 1; d <= row.size(); ++d) {
      bool done = false;
      for (auto [rm, rd] : required) done = done || (rm == m && rd == d);
      if (done) continue;
      Cell c = solve(m, d, 20);
      cells.push_back(c);
      const std::size_t expected = row[d - 1];
      if (c.size > expected || (c.optimal && c.size != expected)) {
        ok = false;
        detail << " (" << m << "," << d << ")=" << c.size << "!=" << expected;
      }
      (c.optimal ? optimal_extra : open_extra)++;
      if (m == 8 && d == 2) detail << " (8,2)=" << c.size << (c.optimal ? " optimal" : " best-found");
    }
  }
  std::ostringstream head;
  head << required.size() << " required cells optimal, slowest " << std::fixed << std::setprecision(2) << worst << "s; "
       << optimal_extra << " more cells optimal, " << open_extra << " best-found;";
  report(1, "table reproduction", ok, head.str() + detail.str());
  return cells;
}

void criterion_constant_weight() {
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t m = 3; m <= 9; ++m) {
    MisResult r = max_independent_set(build_graph(m, 1));
    detail << " " << m << ":" << r.vertices.size() << "/" << constant_weight_bound(m);
    ok = ok && r.optimal && r.vertices.size() == constant_weight_bound(m);
  }
  report(2, "constant-weight consistency", ok, "MIS(G(m,1))/A(m,4,3):" + detail.str());
}

void criterion_quadratic() {
  bool ok = true;
  double worst = 0;
  std::ostringstream detail;
  for (std::size_t m = 3; m <= 12; ++m) {
    for (std::uint64_t d : {m - 1, m}) {
      auto t = Clock::now();
      SeparatedSet s = quadratic_construction(m, d);
      const bool separated = static_cast<bool>(is_d_separated(s.points(), 2 * d));
      const double secs = since(t);
      worst = std::max(worst, secs);
      produced_sets.push_back(s);
      const std::size_t expected = m % 2 == 0 ? m * (m + 2) / 4 : (m + 1) * (m + 1) / 4;
      if (!separated || s.size() != expected || secs >= 1.0) {
        ok = false;
        detail << " (" << m << "," << d << ")=" << s.size() << "!=" << expected;
      }
    }
  }
  std::ostringstream head;
  head << "20 cases, slowest " << std::scientific << std::setprecision(1) << worst << "s";
  report(3, "quadratic construction", ok, head.str() + detail.str());
}

void criterion_matrix_table(const std::vector<Cell>& cells) {
  bool ok = true;
  std::size_t checked = 0;
  bool saw_44 = false;
  std::ostringstream detail;
  for (const auto& c : cells) {
    if (!c.optimal || c.d < 2) continue;
    if (c.m == 3) {
      ok = ok && matrix_size_from_set(c.size) == 2;
      ++checked;
      continue;
    }
    auto it = kMatrixTable.find(c.m);
    if (it == kMatrixTable.end() || c.d - 2 >= it->second.size()) continue;
    const std::size_t n = matrix_size_from_set(c.size);
    ++checked;
    if (c.m == 4 && c.d == 4) saw_44 = n == 4 && c.size == 7;
    if (n != it->second[c.d - 2]) {
      ok = false;
      detail << " (" << c.m << "," << c.d << ")=" << n << "!=" << it->second[c.d - 2];
    }
  }
  ok = ok && saw_44;
  std::ostringstream head;
  head << checked << " optimal cells agree" << (saw_44 ? ", (4,4): size 7 -> n=4" : ", (4,4) not solved");
  report(4, "matrix-size table", ok, head.str() + detail.str());
}

void criterion_witnesses() {
  auto t = Clock::now();
  fuzz::Rng rng(20240601);
  const RingCtx q(FieldSpec::rationals(), 0), f(FieldSpec::prime(101), 0);
  std::size_t tri_ok = 0, hol_ok = 0;
  for (int k = 0; k < 1000; ++k) {
    const RingCtx& ctx = k % 2 ? f : q;
    const std::size_t n = 1 + static_cast<std::size_t>(k % 8);
    try {
      Matrix a = fuzz::random_upper_trace_zero(ctx, n, rng);
      WitnessPair w = triangular_witness(a);
      if (commutator(w.x(), w.b()) == a) ++tri_ok;
    } catch (const Error&) {
    }
    try {
      Matrix h = fuzz::random_hollow(ctx, n, rng);
      WitnessPair w = hollow_witness(h, verify_clique(fuzz::random_clique(ctx, n - 1, rng), ctx));
      if (commutator(w.x(), w.b()) == h) ++hol_ok;
    } catch (const Error&) {
    }
  }
  const double secs = since(t);
  std::ostringstream detail;
  detail << "triangular " << tri_ok << "/1000, hollow " << hol_ok << "/1000 in " << std::fixed << std::setprecision(2)
         << secs << "s";
  report(5, "witness soundness", tri_ok == 1000 && hol_ok == 1000 && secs < 30, detail.str());
}

void criterion_nilpotent() {
  auto t = Clock::now();
  fuzz::Rng rng(77);
  const RingCtx f(FieldSpec::prime(101), 0);
  std::size_t ok = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
    try {
      Matrix g = fuzz::random_invertible(f, n, rng);
      Matrix a = g * fuzz::random_strictly_upper(f, n, rng) * inverse(g);
      WitnessPair w = nilpotent_witness(a);
      if (commutator(w.x(), w.b()) == a) ++ok;
    } catch (const Error&) {
    }
  }
  std::ostringstream detail;
  detail << ok << "/500 verified in " << std::fixed << std::setprecision(2) << since(t) << "s";
  report(6, "nilpotent pipeline", ok == 500, detail.str());
}

void criterion_oracle() {
  Certificate cert = build_noncommutator(3, 0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2, FieldSpec::rationals());
  produced_certificates.push_back(cert);
  auto t = Clock::now();
  SearchOutcome o = exhaustive_noncommutator_check(cert, 2);
  const double secs = since(t);
  RingCtx ctx(FieldSpec::prime(2), 3, 2);
  Matrix control = Matrix::from_rows(ctx, {{ctx.zero(), ctx.variable(0)}, {ctx.variable(1), ctx.zero()}});
  SearchOutcome c = exhaustive_commutator_search(control);
  const bool control_ok = c.found && commutator(*c.b, *c.c) == control;
  std::ostringstream detail;
  detail << (o.found ? "FoundWitness" : "NoWitness") << " after " << o.pairs_examined << "/" << o.search_size << " pairs in "
         << std::fixed << std::setprecision(2) << secs << "s; control " << (c.found ? "FoundWitness" : "NoWitness");
  report(7, "oracle non-existence", !o.found && o.pairs_examined == (std::uint64_t{1} << 24) && secs < 60 && control_ok,
         detail.str());
}

void criterion_quadric() {
  bool ok = true;
  std::ostringstream detail;
  for (auto [p, i] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 2}, {5, 3}, {13, 5}}) {
    QuadricCheck q = quadric_decomposition_details(p, i);
    bool zero = q.holds;
    for (const auto& r : q.remainders) zero = zero && r.is_zero();
    detail << " (" << p << "," << i << "):" << (zero ? "0" : "nonzero");
    ok = ok && zero;
  }
  report(8, "quadric identity", ok, "remainders" + detail.str());
}

void criterion_bounds() {
  bool ok = true;
  for (const auto& s : produced_sets) ok = ok && s.size() <= upper_bounds(s.m()).set_bound;
  for (const auto& c : produced_certificates) ok = ok && c.n <= *upper_bounds(c.m).matrix_bound;
  std::ostringstream detail;
  detail << produced_sets.size() << " sets within 4^(m-1), " << produced_certificates.size()
         << " certificates within 2^(2m-3)";
  report(9, "bound invariants", ok, detail.str());
}

void criterion_algebra() {
  const std::vector<RingCtx> contexts{RingCtx(FieldSpec::rationals(), 0), RingCtx(FieldSpec::rationals(), 2),
                                      RingCtx(FieldSpec::prime(101), 0), RingCtx(FieldSpec::prime(2), 3, 2),
                                      RingCtx(FieldSpec::prime(5), 2, 4)};
  fuzz::Rng rng(99);
  std::size_t trace_ok = 0, trace_total = 0;
  for (const RingCtx& ctx : contexts) {
    for (int k = 0; k < 500; ++k) {
      const std::size_t n = 1 + static_cast<std::size_t>(k % 4);
      Matrix a = fuzz::random_matrix(ctx, n, rng), b = fuzz::random_matrix(ctx, n, rng), c = fuzz::random_matrix(ctx, n, rng);
      ++trace_total;
      if (trace(a * b) == trace(b * a) && trace(commutator(b, c)).is_zero() && trace(b * commutator(b, c)).is_zero()) {
        ++trace_ok;
      }
    }
  }
  const RingCtx full(FieldSpec::rationals(), 3);
  const Polynomial g = Polynomial::parse(full.field(), 3, "x1^2 + x2^2 + x3^2 - 1");
  std::size_t hom_ok = 0, red_ok = 0;
  for (int k = 0; k < 500; ++k) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(k % 5);
    const RingCtx trunc(full.field(), 3, n);
    RingElem p = fuzz::random_element(full, rng), q = fuzz::random_element(full, rng);
    if ((p * q).truncated(n) == trunc.mul(trunc.reduce(p), trunc.reduce(q))) ++hom_ok;
    RingElem r = reduce_by_divisor(p * q, g);
    if (reduce_by_divisor(r, g) == r && reduce_by_divisor(p + q, g) == reduce_by_divisor(p, g) + reduce_by_divisor(q, g)) ++red_ok;
  }
  std::ostringstream detail;
  detail << "trace " << trace_ok << "/" << trace_total << " over " << contexts.size() << " rings, truncation " << hom_ok
         << "/500, reduction " << red_ok << "/500";
  report(10, "algebra properties", trace_ok == trace_total && hom_ok == 500 && red_ok == 500, detail.str());
}

}  // namespace

int main() {
  try {
    std::vector<Cell> cells = criterion_tables();
    criterion_constant_weight();
    criterion_quadratic();
    criterion_matrix_table(cells);
    criterion_witnesses();
    criterion_nilpotent();
    criterion_oracle();
    criterion_quadric();
    criterion_bounds();
    criterion_algebra();
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance run aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
