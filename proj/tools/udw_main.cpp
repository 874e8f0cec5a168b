// Command-line front end: single-element evaluation, cutoff sweeps and
// divergence fits, figure-data generation, and oracle reference tables.
// Output is CSV or JSON with 17 significant digits, byte-reproducible.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "udw/divergence.hpp"
#include "udw/elements.hpp"
#include "udw/measures.hpp"
#include "udw/oracle.hpp"
#include "udw/types.hpp"

namespace {

using namespace udw;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 2;
constexpr int kExitContract = 3;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  Params params;
  quadrature::QuadratureSpec quad = elements::default_spec();
  std::string term = "laa";
  std::string coupling_str = "linear";
  std::string out;
  std::string format = "csv";
  int threads = (int)std::max(1u, std::thread::hardware_concurrency());
  std::vector<double> etas;
  double conv_threshold = 1e-3;
};

Term parse_term(const std::string& s) {
  if (s == "laa") return Term::LAA;
  if (s == "lab") return Term::LAB;
  if (s == "m") return Term::M;
  fail(ErrorKind::InvalidArgument, "unknown term '" + s + "' (expected laa|lab|m)");
}

Coupling parse_coupling(const std::string& s) {
  if (s == "linear") return Coupling::Linear;
  if (s == "quadratic") return Coupling::Quadratic;
  fail(ErrorKind::InvalidArgument, "unknown coupling '" + s + "'");
}

void add_common_flags(CLI::App* cmd, Options& o, bool with_term = true) {
  cmd->get_formatter()->column_width(34);
  if (with_term) {
    cmd->add_option("--term", o.term, "matrix element: laa|lab|m")
        ->check(CLI::IsMember({"laa", "lab", "m"}));
    cmd->add_option("--coupling", o.coupling_str, "field coupling: linear|quadratic")
        ->check(CLI::IsMember({"linear", "quadratic"}));
  }
  cmd->add_option("--alpha", o.params.alpha, "detector gap Omega*T");
  cmd->add_option("--beta", o.params.beta, "detector separation |x_A-x_B|/T")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--delta", o.params.delta, "detector size sigma/T")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gamma-a", o.params.gamma_a, "switch-on time of A, t_A/T");
  cmd->add_option("--gamma-b", o.params.gamma_b, "switch-on time of B, t_B/T");
  cmd->add_option("--gamma", o.params.gamma_a,
                  "simultaneous switch-on time (sets gamma-a = gamma-b)")
      ->each([&o](const std::string& v) { o.params.gamma_b = std::stod(v); });
  cmd->add_option("--eta", o.params.eta, "soft UV cutoff eps/T")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--lambda-a", o.params.lambda_a, "coupling strength of A");
  cmd->add_option("--lambda-b", o.params.lambda_b, "coupling strength of B");
  cmd->add_option("--rel-tol", o.quad.rel_tol, "quadrature relative tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--abs-tol", o.quad.abs_tol, "quadrature absolute floor")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-evals", o.quad.max_evals, "integrand evaluation budget");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads for grids/sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--config", "flat key=value config file (flags override)")
      ->expected(1);
  for (const auto& opt : cmd->get_options())
    if (!opt->get_positional()) const_cast<CLI::Option*>(opt)->take_last();
}

// flags > config file > defaults: read the flat key=value file and inject its
// settings as tokens right after the subcommand name, before the explicit
// flags (every option takes the last occurrence).
std::vector<std::string> apply_config_file(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::ifstream f(path);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot read config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) continue;
    if (key.rfind("--", 0) != 0) key = "--" + key;
    tokens.push_back(key);
    tokens.push_back(val);
  }
  std::vector<std::string> out;
  out.push_back(args[0]);
  out.push_back(args[1]);  // subcommand
  for (auto& t : tokens) out.push_back(t);
  for (std::size_t i = 2; i < args.size(); ++i) out.push_back(args[i]);
  return out;
}

std::ostream& open_sink(const Options& o, std::ofstream& file) {
  if (o.out.empty()) return std::cout;
  file.open(o.out, std::ios::binary);  // binary: no platform newline surprises
  if (!file) fail(ErrorKind::InvalidArgument, "cannot open output file " + o.out);
  return file;
}

// deterministic worker pool: results land in slot i regardless of schedule
void parallel_for(int threads, std::size_t n, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int use = std::min<std::size_t>(threads, n);
  for (int t = 0; t < use; ++t)
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

struct Cell {
  bool ok = false;
  std::string status = "ok";
  ElementResult r;
};

Cell eval_cell(Term term, Coupling c, const Params& p, const quadrature::QuadratureSpec& s) {
  Cell cell;
  try {
    cell.r = elements::element(term, c, p, s);
    cell.ok = true;
    if (!cell.r.converged) cell.status = "tolerance";
  } catch (const DomainError& e) {
    cell.status = to_string(e.kind());
  }
  return cell;
}

// ---------------------------------------------------------------------------
// element
// ---------------------------------------------------------------------------
int cmd_element(const Options& o) {
  Term term = parse_term(o.term);
  Coupling c = parse_coupling(o.coupling_str);
  Params p = o.params;
  p.coupling = c;
  ElementResult r = elements::element(term, c, p, o.quad);
  std::ofstream file;
  std::ostream& os = open_sink(o, file);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["term"] = to_string(term);
    j["coupling"] = to_string(c);
    j["params"] = {{"alpha", p.alpha},     {"beta", p.beta},
                   {"gamma_a", p.gamma_a}, {"gamma_b", p.gamma_b},
                   {"delta", p.delta},     {"eta", p.eta},
                   {"lambda_a", p.lambda_a}, {"lambda_b", p.lambda_b}};
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["abs"] = std::abs(r.value);
    j["err_estimate"] = r.err_estimate;
    j["evals"] = r.evals;
    j["converged"] = r.converged;
    os << j.dump(2) << "\n";
  } else {
    os << "term,coupling,alpha,beta,gamma_a,gamma_b,delta,eta,re,im,abs,err_estimate,evals\n";
    os << to_string(term) << ',' << to_string(c) << ',' << fmt(p.alpha) << ','
       << fmt(p.beta) << ',' << fmt(p.gamma_a) << ',' << fmt(p.gamma_b) << ','
       << fmt(p.delta) << ',' << fmt(p.eta) << ',' << fmt(r.value.real()) << ','
       << fmt(r.value.imag()) << ',' << fmt(std::abs(r.value)) << ','
       << fmt(r.err_estimate) << ',' << r.evals << "\n";
  }
  return r.converged ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------------------
// sweep / fit-divergence
// ---------------------------------------------------------------------------
std::vector<double> default_etas() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
}

const char* verdict_name(divergence::Verdict v) {
  switch (v) {
    case divergence::Verdict::Convergent: return "Convergent";
    case divergence::Verdict::LogDivergent: return "LogDivergent";
    case divergence::Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

int cmd_sweep(const Options& o, bool with_fit) {
  Term term = parse_term(o.term);
  Coupling c = parse_coupling(o.coupling_str);
  std::vector<double> etas = o.etas.empty() ? default_etas() : o.etas;
  if (etas.size() < 4) {
    std::cerr << "error: >= 4 etas required\n";
    return kExitContract;
  }
  divergence::SweepResult sr = divergence::sweep_eta(term, c, o.params, etas, o.quad,
                                                     o.conv_threshold, o.threads);
  std::ofstream file;
  std::ostream& os = open_sink(o, file);
  os << "eta,re,im,abs,err_estimate,evals\n";
  for (const auto& row : sr.rows)
    os << fmt(row.eta) << ',' << fmt(row.element.value.real()) << ','
       << fmt(row.element.value.imag()) << ',' << fmt(std::abs(row.element.value)) << ','
       << fmt(row.element.err_estimate) << ',' << row.element.evals << "\n";
  if (with_fit) {
    os << "# verdict," << verdict_name(sr.verdict) << "\n";
    if (sr.fit)
      os << "# fit,a=" << fmt(sr.fit->intercept) << ",b=" << fmt(sr.fit->slope)
         << ",r2=" << fmt(sr.fit->r_squared) << ",window_begin=" << sr.fit->window_begin
         << "\n";
  }
  bool conv = true;
  for (const auto& row : sr.rows) conv = conv && row.element.converged;
  return conv ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------
struct GridSpec {
  double alpha_min = 0.0, alpha_max = 5.0;
  int alpha_steps = 21;
  double beta_min = 0.25, beta_max = 6.0;
  int beta_steps = 24;
  double dgamma_min = 0.0, dgamma_max = 6.0;
  int dgamma_steps = 25;
};

double grid_at(double lo, double hi, int steps, int i) {
  return steps <= 1 ? lo : lo + (hi - lo) * i / (steps - 1);
}

int cmd_figure(const Options& o, const std::string& name, const GridSpec& g) {
  std::ofstream file;
  std::ostream& os = open_sink(o, file);
  const auto couplings = {Coupling::Linear, Coupling::Quadratic};

  if (name == "fig2") {
    // cutoff dependence of all six elements at the canonical parameters
    std::vector<double> etas = o.etas.empty() ? default_etas() : o.etas;
    os << "series,eta,abs,re,im,err_estimate,status\n";
    for (Coupling c : couplings) {
      for (Term term : {Term::LAA, Term::LAB, Term::M}) {
        Params p = o.params;
        if (term == Term::M) p.gamma_b = p.gamma_a;  // simultaneous switching
        std::vector<Cell> cells(etas.size());
        parallel_for(o.threads, etas.size(), [&](std::size_t i) {
          Params q = p;
          q.eta = etas[i];
          cells[i] = eval_cell(term, c, q, o.quad);
        });
        for (std::size_t i = 0; i < etas.size(); ++i) {
          const Cell& cell = cells[i];
          os << to_string(term) << '_' << to_string(c) << ',' << fmt(etas[i]) << ',';
          if (cell.ok)
            os << fmt(std::abs(cell.r.value)) << ',' << fmt(cell.r.value.real()) << ','
               << fmt(cell.r.value.imag()) << ',' << fmt(cell.r.err_estimate);
          else
            os << ",,,";
          os << ',' << cell.status << "\n";
        }
      }
    }
    return kExitOk;
  }

  if (name == "fig3" || name == "fig4") {
    // harvesting maps: identical detectors, N^(2)/lambda^2 = |m| - l_aa
    std::vector<double> etas = o.etas;
    if (etas.empty()) {
      if (name == "fig3")
        etas = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
      else
        etas = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12};
    }
    std::vector<double> alphas;
    if (name == "fig3")
      for (int i = 0; i < g.alpha_steps; ++i)
        alphas.push_back(grid_at(g.alpha_min, g.alpha_max, g.alpha_steps, i));
    else
      alphas = {0.0, 1.0};
    os << "coupling,eta,alpha,beta,n2_over_lambda2,status\n";
    struct Job {
      Coupling c;
      double eta, alpha, beta;
    };
    std::vector<Job> jobs;
    for (Coupling c : couplings)
      for (double eta : etas)
        for (double a : alphas)
          for (int ib = 0; ib < g.beta_steps; ++ib)
            jobs.push_back({c, eta, a, grid_at(g.beta_min, g.beta_max, g.beta_steps, ib)});
    // l_aa is beta-independent: evaluate once per (coupling, eta, alpha)
    struct Local {
      double n2 = 0.0;
      std::string status = "ok";
      bool ok = false;
    };
    std::vector<Local> out_cells(jobs.size());
    parallel_for(o.threads, jobs.size(), [&](std::size_t i) {
      const Job& jb = jobs[i];
      Params p = o.params;
      p.alpha = jb.alpha;
      p.beta = jb.beta;
      p.eta = jb.eta;
      p.gamma_b = p.gamma_a;
      try {
        ElementResult laa = jb.c == Coupling::Linear ? elements::l_aa_linear(p, o.quad)
                                                     : elements::l_aa_quadratic(p, o.quad);
        ElementResult m = jb.c == Coupling::Linear
                              ? elements::m_linear_simultaneous(p, o.quad)
                              : elements::m_quadratic_simultaneous(p, o.quad);
        out_cells[i].n2 = std::abs(m.value) - laa.value.real();
        out_cells[i].ok = true;
        if (!(laa.converged && m.converged)) out_cells[i].status = "tolerance";
      } catch (const DomainError& e) {
        out_cells[i].status = to_string(e.kind());
      }
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Job& jb = jobs[i];
      os << to_string(jb.c) << ',' << fmt(jb.eta) << ',' << fmt(jb.alpha) << ','
         << fmt(jb.beta) << ',';
      if (out_cells[i].ok) os << fmt(out_cells[i].n2);
      os << ',' << out_cells[i].status << "\n";
    }
    return kExitOk;
  }

  if (name == "fig5") {
    // mutual information over (beta, gamma_b - gamma_a); lightcone beta = |dgamma|
    double eta = o.etas.empty() ? 1e-4 : o.etas.front();
    os << "coupling,eta,beta,dgamma,mutual_information,lightcone,status\n";
    struct Job {
      Coupling c;
      double beta, dg;
    };
    std::vector<Job> jobs;
    for (Coupling c : couplings)
      for (int ig = 0; ig < g.dgamma_steps; ++ig)
        for (int ib = 0; ib < g.beta_steps; ++ib)
          jobs.push_back({c, grid_at(g.beta_min, g.beta_max, g.beta_steps, ib),
                          grid_at(g.dgamma_min, g.dgamma_max, g.dgamma_steps, ig)});
    struct Local {
      double mi = 0.0;
      bool ok = false;
      std::string status = "ok";
    };
    std::vector<Local> cells(jobs.size());
    parallel_for(o.threads, jobs.size(), [&](std::size_t i) {
      const Job& jb = jobs[i];
      Params p = o.params;
      p.beta = jb.beta;
      p.eta = eta;
      p.gamma_b = p.gamma_a + jb.dg;
      try {
        ElementResult laa = jb.c == Coupling::Linear ? elements::l_aa_linear(p, o.quad)
                                                     : elements::l_aa_quadratic(p, o.quad);
        ElementResult lab = jb.c == Coupling::Linear ? elements::l_ab_linear(p, o.quad)
                                                     : elements::l_ab_quadratic(p, o.quad);
        measures::Elements4 el{laa.value.real(), laa.value.real(), lab.value, Complex(0, 0)};
        measures::DensityMatrix4 dm = measures::assemble(p, el);
        cells[i].mi = measures::mutual_information(dm).mutual_information;
        cells[i].ok = true;
        if (!(laa.converged && lab.converged)) cells[i].status = "tolerance";
      } catch (const DomainError& e) {
        cells[i].status = to_string(e.kind());
      }
    });
    double beta_step = g.beta_steps > 1 ? (g.beta_max - g.beta_min) / (g.beta_steps - 1) : 1.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Job& jb = jobs[i];
      bool lc = std::abs(jb.beta - std::abs(jb.dg)) < 0.5 * beta_step;
      os << to_string(jb.c) << ',' << fmt(eta) << ',' << fmt(jb.beta) << ','
         << fmt(jb.dg) << ',';
      if (cells[i].ok) os << fmt(cells[i].mi);
      os << ',' << (lc ? 1 : 0) << ',' << cells[i].status << "\n";
    }
    return kExitOk;
  }

  std::cerr << "error: unknown figure '" << name << "'\n";
  return kExitUsage;
}

// ---------------------------------------------------------------------------
// regen-oracle-tables
// ---------------------------------------------------------------------------
int cmd_regen_oracle(const Options& o) {
  std::ofstream file;
  std::ostream& os = open_sink(o, file);
  os << "term,coupling,alpha,beta,delta,gamma_a,gamma_b,eta,re,im,err_estimate,evals\n";
  oracle::OracleSpec spec;
  struct Job {
    Term t;
    Coupling c;
    Params p;
  };
  std::vector<Job> jobs;
  for (Coupling c : {Coupling::Linear, Coupling::Quadratic})
    for (Term t : {Term::LAA, Term::LAB, Term::M})
      for (double alpha : {0.0, 1.0, 2.0})
        for (double beta : {1.0, 4.0})
          for (double eta : {1e-2, 1e-4}) {
            Params p = o.params;
            p.alpha = alpha;
            p.beta = beta;
            p.delta = 1.0;
            p.eta = eta;
            p.gamma_a = 0.0;
            p.gamma_b = t == Term::LAB ? 4.0 : 0.0;
            if (t == Term::LAA && beta != 1.0) continue;  // beta-independent
            jobs.push_back({t, c, p});
          }
  std::vector<std::string> lines(jobs.size());
  parallel_for(o.threads, jobs.size(), [&](std::size_t i) {
    const Job& jb = jobs[i];
    std::ostringstream ss;
    ss << to_string(jb.t) << ',' << to_string(jb.c) << ',' << fmt(jb.p.alpha) << ','
       << fmt(jb.p.beta) << ',' << fmt(jb.p.delta) << ',' << fmt(jb.p.gamma_a) << ','
       << fmt(jb.p.gamma_b) << ',' << fmt(jb.p.eta) << ',';
    try {
      ElementResult r = oracle::oracle_element(jb.t, jb.c, jb.p, spec);
      ss << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
         << fmt(r.err_estimate) << ',' << r.evals;
    } catch (const DomainError& e) {
      ss << ",,," << to_string(e.kind());
    }
    lines[i] = ss.str();
  });
  for (const std::string& l : lines) os << l << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-detector vacuum-response toolkit: matrix elements, cutoff sweeps, "
               "harvesting maps"};
  app.require_subcommand(1);

  Options o;
  GridSpec grid;
  std::string fig_name;

  CLI::App* element = app.add_subcommand("element", "evaluate one matrix element");
  add_common_flags(element, o);

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate an element over a cutoff sweep");
  add_common_flags(sweep, o);
  sweep->add_option("--etas", o.etas, "descending cutoff values")->delimiter(',');
  sweep->add_option("--conv-threshold", o.conv_threshold,
                    "relative stall level for the Convergent verdict");

  CLI::App* fitd = app.add_subcommand("fit-divergence",
                                      "cutoff sweep plus log-divergence fit and verdict");
  add_common_flags(fitd, o);
  fitd->add_option("--etas", o.etas, "descending cutoff values")->delimiter(',');
  fitd->add_option("--conv-threshold", o.conv_threshold,
                   "relative stall level for the Convergent verdict");

  CLI::App* figure = app.add_subcommand("figure", "generate figure data (CSV)");
  add_common_flags(figure, o, /*with_term=*/false);
  figure->add_option("--name", fig_name, "fig2|fig3|fig4|fig5")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
  figure->add_option("--etas", o.etas, "cutoff values (fig5 uses the first)")->delimiter(',');
  figure->add_option("--alpha-min", grid.alpha_min);
  figure->add_option("--alpha-max", grid.alpha_max);
  figure->add_option("--alpha-steps", grid.alpha_steps)->check(CLI::Range(1, 50));
  figure->add_option("--beta-min", grid.beta_min);
  figure->add_option("--beta-max", grid.beta_max);
  figure->add_option("--beta-steps", grid.beta_steps)->check(CLI::Range(1, 50));
  figure->add_option("--dgamma-min", grid.dgamma_min);
  figure->add_option("--dgamma-max", grid.dgamma_max);
  figure->add_option("--dgamma-steps", grid.dgamma_steps)->check(CLI::Range(1, 50));

  CLI::App* regen = app.add_subcommand("regen-oracle-tables",
                                       "regenerate brute-force reference tables");
  add_common_flags(regen, o, /*with_term=*/false);

  std::vector<std::string> args;
  try {
    args = apply_config_file(argc, argv);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<const char*> argp;
  for (const std::string& a : args) argp.push_back(a.c_str());
  try {
    app.parse((int)argp.size(), argp.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    o.params.validate();
    o.quad.validate();
    if (element->parsed()) return cmd_element(o);
    if (sweep->parsed()) return cmd_sweep(o, /*with_fit=*/false);
    if (fitd->parsed()) return cmd_sweep(o, /*with_fit=*/true);
    if (figure->parsed()) return cmd_figure(o, fig_name, grid);
    if (regen->parsed()) return cmd_regen_oracle(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContract;
  }
  return kExitUsage;
}
