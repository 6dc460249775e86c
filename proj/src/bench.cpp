#include "fracpow/bench.hpp"

#include "fracpow/errors.hpp"
#include "fracpow/fracsolve.hpp"
#include "fracpow/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <memory>
#include <sstream>
#include <thread>

#ifndef FRACPOW_REFERENCE_DIR
#define FRACPOW_REFERENCE_DIR "data/reference"
#endif

namespace fracpow {

namespace {

const std::vector<double> kAlphas{0.1, 0.25, 0.5, 0.75, 0.9};
const std::vector<int> kMs{25, 50, 100};

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs job(i) for i in [0, count) on `threads` workers. Jobs write to their
// own slots, so the result does not depend on scheduling.
template <class Job> void parallel_for(std::size_t count, unsigned threads, Job &&job) {
  const unsigned n = worker_count(threads, count);
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
              failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure)
    std::rethrow_exception(failure);
}

// Shortest text that reads back to the same double.
std::string format_number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep))
    out.push_back(cur);
  if (!line.empty() && line.back() == sep)
    out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string &s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    throw IoError("not a number: '" + s + "'");
  }
  if (used != s.size())
    throw IoError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string &s) {
  const double v = parse_double(s);
  if (v != std::floor(v))
    throw IoError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

Table table1(const SweepSpec &spec) {
  Table t{1, "m", "p", spec.alphas, {}, {}};
  struct Job {
    int m, p;
    double alpha;
  };
  std::vector<Job> jobs;
  for (int m : spec.ms)
    for (int p : spec.ps)
      for (double a : spec.alphas)
        jobs.push_back({m, p, a});
  std::vector<double> eps(jobs.size());
  parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
    eps[i] = quad_error_study(jobs[i].m, jobs[i].alpha, jobs[i].p, spec.kappa).epsilon;
  });
  std::size_t i = 0;
  for (int m : spec.ms) {
    for (int p : spec.ps) {
      TableRow row{m, p, "eps", {}};
      for (double a : spec.alphas) {
        row.values.push_back(eps[i]);
        t.cells.push_back({1, spec.rhs, 0, p, m, a, "eps", eps[i], 0.0});
        ++i;
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table solution_table(const SweepSpec &spec) {
  const bool by_p = spec.table == 2 || spec.table == 3;
  Table t{spec.table, by_p ? "p" : "N", "m", spec.alphas, {}, {}};

  // One basis per grid size, shared read-only by every cell on that grid.
  std::map<int, std::shared_ptr<const SpectralBasis>> bases;
  std::map<int, std::shared_ptr<const GridFunction>> rhs;
  for (int n : spec.ns) {
    const Grid2D g = Grid2D::unit_square(n);
    bases[n] = std::make_shared<const SpectralBasis>(SpectralBasis::analytic(g));
    rhs[n] = std::make_shared<const GridFunction>(make_rhs(g, spec.rhs));
  }

  struct Job {
    int lead, n, p, m;
    double alpha;
  };
  std::vector<Job> jobs;
  const std::vector<int> &leads = by_p ? spec.ps : spec.ns;
  for (int lead : leads)
    for (int m : spec.ms)
      for (double a : spec.alphas) {
        const int n = by_p ? spec.ns.front() : lead;
        const int p = by_p ? lead : spec.ps.front();
        jobs.push_back({lead, n, p, m, a});
      }

  std::vector<std::unique_ptr<SolveReport>> slots(jobs.size());
  parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
    const Job &j = jobs[i];
    SolverConfig cfg{j.alpha, j.p, j.m, std::nullopt};
    slots[i] = std::make_unique<SolveReport>(solution_report(cfg, *bases[j.n], *rhs[j.n]));
  });

  std::size_t i = 0;
  for (int lead : leads) {
    for (int m : spec.ms) {
      TableRow r2{lead, m, "eps2", {}};
      TableRow ri{lead, m, "epsinf", {}};
      for (double a : spec.alphas) {
        const Job &j = jobs[i];
        const SolveReport &r = *slots[i];
        r2.values.push_back(r.eps2);
        ri.values.push_back(r.epsinf);
        t.cells.push_back({spec.table, spec.rhs, j.n, j.p, m, a, "eps2", r.eps2, r.max_u});
        t.cells.push_back({spec.table, spec.rhs, j.n, j.p, m, a, "epsinf", r.epsinf, r.max_u});
        ++i;
      }
      t.rows.push_back(std::move(r2));
      t.rows.push_back(std::move(ri));
    }
  }
  return t;
}

} // namespace

SweepSpec SweepSpec::defaults(int table) {
  SweepSpec s;
  s.table = table;
  s.alphas = kAlphas;
  s.ms = kMs;
  switch (table) {
  case 1:
    s.ps = {0, 1, 2, 3, 4};
    break;
  case 2:
  case 3:
    s.ps = {0, 1, 2};
    s.ns = {256};
    break;
  case 4:
  case 5:
    s.ps = {0};
    s.ns = {32, 64, 128};
    break;
  default:
    throw DomainError("table id must be 1..5, got " + std::to_string(table));
  }
  s.rhs = (table == 3 || table == 5) ? Rhs::f2 : Rhs::f1;
  return s;
}

void SweepSpec::validate() const {
  if (table < 1 || table > 5)
    throw DomainError("table id must be 1..5, got " + std::to_string(table));
  if (alphas.empty() || ms.empty() || ps.empty())
    throw DomainError("sweep needs at least one alpha, m and p");
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0))
      throw DomainError("alpha must lie in (0, 1), got " + std::to_string(a));
  for (int m : ms)
    if (m < 1)
      throw DomainError("m must be positive");
  for (int p : ps)
    if (p < 0)
      throw DomainError("p must be nonnegative");
  if (table > 1) {
    if (ns.empty())
      throw DomainError("solution tables need at least one grid size");
    if ((table == 2 || table == 3) && ns.size() != 1)
      throw DomainError("tables 2 and 3 sweep p at a single grid size");
    if ((table == 4 || table == 5) && ps.size() != 1)
      throw DomainError("tables 4 and 5 sweep N at a single p");
    for (int n : ns) {
      if (n < 2)
        throw DomainError("grid size must be at least 2");
      const auto k = static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n - 1);
      if (k > kMaxAnalyticUnknowns)
        throw CapacityError("grid N=" + std::to_string(n) + " exceeds the unknown limit");
    }
  }
}

Table run_table(const SweepSpec &spec) {
  spec.validate();
  return spec.table == 1 ? table1(spec) : solution_table(spec);
}

std::string Table::to_csv() const {
  std::ostringstream os;
  os << first_name << ',' << second_name << ",error";
  for (double a : alphas)
    os << ',' << format_number(a);
  os << '\n';
  for (const auto &r : rows) {
    os << r.first << ',' << r.second << ',' << r.error;
    for (double v : r.values)
      os << ',' << format_number(v);
    os << '\n';
  }
  return os.str();
}

Table Table::from_csv(const std::string &text, int id) {
  std::istringstream is(text);
  std::string line;
  Table t;
  t.id = id;
  if (!std::getline(is, line))
    throw IoError("empty table");
  const auto head = split(trim(line), ',');
  if (head.size() < 4 || trim(head[2]) != "error")
    throw IoError("table header must be '<key>,<key>,error,<alpha>...'");
  t.first_name = trim(head[0]);
  t.second_name = trim(head[1]);
  for (std::size_t i = 3; i < head.size(); ++i)
    t.alphas.push_back(parse_double(trim(head[i])));
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty())
      continue;
    const auto f = split(line, ',');
    if (f.size() != head.size())
      throw IoError("line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                    " fields, expected " + std::to_string(head.size()));
    TableRow r{parse_int(trim(f[0])), parse_int(trim(f[1])), trim(f[2]), {}};
    for (std::size_t i = 3; i < f.size(); ++i)
      r.values.push_back(parse_double(trim(f[i])));
    t.rows.push_back(std::move(r));
  }
  return t;
}

bool DiffReport::pass() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellDiff &c) { return c.pass; });
}

std::vector<CellDiff> DiffReport::failures() const {
  std::vector<CellDiff> out;
  std::copy_if(cells.begin(), cells.end(), std::back_inserter(out),
               [](const CellDiff &c) { return !c.pass; });
  return out;
}

std::string DiffReport::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass();
  j["tolerance"] = tolerance;
  j["max_deviation"] = max_deviation;
  j["cells"] = cells.size();
  auto fails = nlohmann::ordered_json::array();
  for (const auto &c : failures()) {
    nlohmann::ordered_json f;
    f["first"] = c.first;
    f["second"] = c.second;
    f["error"] = c.error;
    f["alpha"] = c.alpha;
    f["produced"] = c.produced;
    f["reference"] = c.reference;
    f["deviation"] = c.deviation;
    fails.push_back(std::move(f));
  }
  j["failures"] = std::move(fails);
  return j.dump(2);
}

DiffReport diff_against_reference(const Table &produced, const Table &reference,
                                  double tolerance) {
  if (!(tolerance >= 0.0))
    throw DomainError("tolerance must be nonnegative");
  if (produced.alphas != reference.alphas || produced.rows.size() != reference.rows.size())
    throw DimensionError("tables differ in shape (" + std::to_string(produced.rows.size()) +
                         " vs " + std::to_string(reference.rows.size()) + " rows)");
  DiffReport d;
  d.tolerance = tolerance;
  for (std::size_t r = 0; r < produced.rows.size(); ++r) {
    const TableRow &a = produced.rows[r];
    const TableRow &b = reference.rows[r];
    if (a.first != b.first || a.second != b.second || a.error != b.error ||
        a.values.size() != b.values.size())
      throw DimensionError("row " + std::to_string(r) + " keys differ between tables");
    for (std::size_t c = 0; c < a.values.size(); ++c) {
      CellDiff cd{a.first, a.second, a.error, produced.alphas[c], a.values[c], b.values[c], 0.0,
                  false};
      const double diff = std::abs(cd.produced - cd.reference);
      cd.deviation = cd.reference != 0.0 ? diff / std::abs(cd.reference)
                                         : (diff == 0.0 ? 0.0 : INFINITY);
      cd.pass = cd.deviation <= tolerance;
      d.max_deviation = std::max(d.max_deviation, cd.deviation);
      d.cells.push_back(cd);
    }
  }
  return d;
}

std::uint64_t fnv1a64(const std::string &bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string read_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

namespace {

std::string verified_asset(const std::string &dir, const std::string &name) {
  const std::string text = read_file(dir + "/" + name);
  std::istringstream sums(read_file(dir + "/checksums.txt"));
  std::string hex, file;
  while (sums >> hex >> file) {
    if (file != name)
      continue;
    std::ostringstream got;
    got << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(text);
    if (got.str() != hex)
      throw IoError("checksum mismatch for '" + name + "': expected " + hex + ", got " +
                    got.str());
    return text;
  }
  throw IoError("no checksum recorded for '" + name + "'");
}

} // namespace

Table load_reference(const std::string &dir, int id) {
  if (id < 1 || id > 5)
    throw DomainError("table id must be 1..5, got " + std::to_string(id));
  return Table::from_csv(verified_asset(dir, "table" + std::to_string(id) + ".csv"), id);
}

std::vector<FigureAnchor> load_figure_anchors(const std::string &dir) {
  std::istringstream is(verified_asset(dir, "figures.csv"));
  std::string line;
  std::getline(is, line);
  std::vector<FigureAnchor> out;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty())
      continue;
    const auto f = split(line, ',');
    if (f.size() != 3)
      throw IoError("figures.csv rows need rhs,alpha,max_u");
    out.push_back({parse_rhs(trim(f[0])), parse_double(trim(f[1])), parse_double(trim(f[2]))});
  }
  return out;
}

std::vector<FigureAnchor> run_figure_anchors(Rhs rhs, const std::vector<double> &alphas, int n,
                                             int m, unsigned threads) {
  const Grid2D g = Grid2D::unit_square(n);
  const SpectralBasis basis = SpectralBasis::analytic(g);
  const GridFunction b = make_rhs(g, rhs);
  std::vector<FigureAnchor> out(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) {
    const SolveReport r = solution_report(SolverConfig{alphas[i], 0, m, std::nullopt}, basis, b);
    out[i] = {rhs, alphas[i], r.max_u};
  });
  return out;
}

std::string default_reference_dir() { return FRACPOW_REFERENCE_DIR; }

} // namespace fracpow
