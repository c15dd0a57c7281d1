// zdzeta command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 domain error, 3 internal error or oracle mismatch.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zdzeta/zdzeta.hpp"

namespace {

using namespace zdzeta;

struct Output {
  std::vector<std::string> summary;
  std::optional<std::string> value;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  int exit_code = 0;
};

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string hnf;
  std::int64_t n = 0;
  std::int64_t terms = 20;
  std::int64_t max_index = 24;
  std::int64_t depth = 6;
  std::uint64_t qmax = 600;
  std::string eps = "1/10";
  std::uint64_t t = 0;
  std::uint64_t q = 1;
  std::uint64_t k = 5;
  bool radius = false;
  bool decimal = false;
  std::string format = "csv";
  std::string output;
  unsigned jobs = 1;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  std::string render(const Factored& f) const { return cfg_.decimal ? f.integer_value().str() : f.to_string(); }

  ActionSpec spec() const { return load_spec(cfg_.spec_path); }

  Output count() const {
    const auto s = spec();
    Subgroup sub;
    if (!cfg_.hnf.empty()) {
      sub = parse_hnf(s.d(), cfg_.hnf);
    } else {
      if (s.d() != 1) throw CLI::ValidationError("--n", "--n needs a d = 1 spec; use --hnf");
      if (cfg_.n < 1) throw CLI::ValidationError("--n", "must be >= 1");
      sub = Subgroup::diagonal({cfg_.n});
    }
    Output out;
    out.value = render(count_fixed(s, sub));
    return out;
  }

  Output zeta() const {
    const auto s = spec();
    const auto os = orbit_sums(s, cfg_.terms, cfg_.jobs);
    const auto z = zeta_coefficients(os);
    Output out;
    std::ostringstream c;
    for (std::size_t k = 0; k < z.c.size(); ++k) c << (k ? "," : "") << z.c[k];
    out.summary.push_back("c = " + c.str());
    if (cfg_.radius) {
      const auto h = entropy(s);
      const auto r = radius_report(os, log_value(h));
      out.summary.push_back("h = " + render_log(h) + ", limsup estimate g = " + fmt(r.g_estimate) + ", radius estimate " + fmt(r.radius_estimate()));
      out.columns = {"n", "a_n", "root", "normalized_root", "g_window"};
      for (const auto& row : r.rows) {
        out.rows.push_back({std::to_string(row.n), os.a[static_cast<std::size_t>(row.n)].str(), fmt(row.root), fmt(row.normalized_root), fmt(row.g_window)});
      }
      return out;
    }
    out.columns = {"k", "a_k", "c_k"};
    for (std::size_t k = 0; k < z.c.size(); ++k) out.rows.push_back({std::to_string(k), k ? os.a[k].str() : "", z.c[k].str()});
    return out;
  }

  Output growth() const {
    const auto s = spec();
    const auto g = growth_scan(s, cfg_.max_index);
    Output out;
    const std::string tail = g.certified ? "tail certified" : "tail not certified";
    if (s.suspended()) {
      out.summary.push_back("g = " + render_log(g.g_n) + ", attained at " + g.argmax.to_string() + ", " + tail);
    } else {
      out.summary.push_back("g = " + render_log(g.g_alpha) + " (entropy); max log F/[L] up to " + std::to_string(g.cutoff) + " = " + render_log(g.g_n) +
                            " at " + g.argmax.to_string() + ", " + tail);
    }
    out.columns = {"key", "value"};
    out.rows = {{"cutoff", std::to_string(g.cutoff)},
                {"g_n", render_log(g.g_n)},
                {"g_n_value", fmt(log_value(g.g_n))},
                {"argmax", g.argmax.to_string()},
                {"tail_bound", fmt(g.tail_bound)},
                {"certified", g.certified ? "true" : "false"},
                {"g_alpha", render_log(g.g_alpha)},
                {"g_alpha_exact", g.g_alpha_exact ? "true" : "false"},
                {"g_alpha_upper", fmt(g.g_alpha_upper)},
                {"entropy", render_log(entropy(s))}};
    return out;
  }

  Output classify() const {
    const auto s = spec();
    const auto cls = classify_1d(s);
    Output out;
    out.columns = {"witness", "degree", "residue_order", "p", "bound_exponent", "bound"};
    if (const auto* r = std::get_if<Rational1d>(&cls)) {
      out.summary.push_back("Rational: zeta = (1 - " + r->e_h.integer_value().str() + " z)^-1, h = " + render_log(r->h));
    } else {
      const auto& b = std::get<Boundary1d>(cls);
      out.summary.push_back("Boundary: " + std::to_string(b.witnesses.size()) + " witness(es)");
      for (const auto& w : b.witnesses) {
        std::ostringstream e;
        e << w.bound_exponent;
        out.rows.push_back({w.w.to_string(), std::to_string(w.d_w), std::to_string(w.ell), std::to_string(w.p), e.str(), fmt(w.bound())});
      }
    }
    // Radius hypothesis reported separately from the verdict.
    const auto os = orbit_sums(s, std::max<std::int64_t>(cfg_.terms, 10), cfg_.jobs);
    const auto h = entropy(s);
    const auto rr = radius_report(os, log_value(h));
    out.summary.push_back("radius check: h = " + fmt(log_value(h)) + ", limsup estimate g = " + fmt(rr.g_estimate));
    return out;
  }

  Output overconv() const {
    const auto s = spec();
    const auto tables = overconvergence_tables(s, cfg_.depth);
    Output out;
    out.columns = {"witness", "k", "n", "log_value", "value", "bound", "within_bound"};
    bool all = true;
    for (const auto& [w, rows] : tables) {
      for (const auto& r : rows) {
        all = all && r.within_bound;
        out.rows.push_back({w.w.to_string(), std::to_string(r.k), std::to_string(r.n), render_log(r.log_value), fmt(r.value), fmt(w.bound()),
                            r.within_bound ? "true" : "false"});
      }
    }
    if (tables.empty()) out.summary.push_back("rational spec: no witnesses");
    else out.summary.push_back(all ? "all values within bound" : "some values exceed the bound");
    return out;
  }

  Output poles() const {
    const auto s = spec();
    Output out;
    out.columns = {"radius", "log_radius", "multiplicity", "hnf"};
    for (const auto& e : pole_cluster_scan(s, cfg_.max_index)) {
      out.rows.push_back({fmt(e.radius), render_log(e.log_radius), std::to_string(e.multiplicity), e.base.to_string()});
    }
    return out;
  }

  Output primescan() const {
    const auto s = spec();
    const BigRational eps = parse_eps(cfg_.eps);
    const auto scan = prime_value_scan(s, eps, cfg_.qmax, cfg_.jobs);
    const auto density = qualifying_density(scan_config(s, eps, cfg_.qmax), std::max<std::uint64_t>(cfg_.qmax, 10));
    Output out;
    std::ostringstream e;
    e << eps;
    out.summary.push_back("eps = " + e.str() + ", q0 = " + fmt(scan.q0) + ", C2 = " + render(scan.c2));
    out.summary.push_back("qualifying primes: " + std::to_string(density.qualifying) + " of " + std::to_string(density.primes) + " (ratio " +
                          fmt(density.ratio()) + ")");
    std::string tail;
    for (const auto& v : scan.tail_values()) tail += (tail.empty() ? "" : ";") + render(v);
    out.summary.push_back("values at qualifying q > q0: {" + tail + "}" + (scan.bounded() ? ", bounded by C2" : ", NOT bounded by C2"));
    std::set<std::uint64_t> ps = s.primes();
    out.columns = {"q", "qualifying", "above_threshold"};
    for (auto p : ps) out.columns.push_back("m_" + std::to_string(p));
    out.columns.push_back("values");
    for (const auto& r : scan.rows) {
      std::vector<std::string> row{std::to_string(r.q), r.qualifying ? "true" : "false", r.above_threshold ? "true" : "false"};
      for (auto p : ps) row.push_back(std::to_string(r.orders.at(p)));
      std::string vals;
      for (const auto& v : r.values) vals += (vals.empty() ? "" : ";") + render(v);
      row.push_back(vals);
      out.rows.push_back(std::move(row));
    }
    return out;
  }

  Output validate() const {
    const auto s = spec();
    const auto report = cross_validate(s, cfg_.max_index, cfg_.jobs);
    Output out;
    out.columns = {"index", "hnf", "formula_count", "oracle_count", "match"};
    for (const auto& r : report.rows) {
      out.rows.push_back({std::to_string(r.index), r.subgroup.to_string(), render(r.formula), render(r.oracle), r.match ? "true" : "false"});
    }
    if (report.all_match()) {
      out.summary.push_back("all " + std::to_string(report.rows.size()) + " comparisons match");
    } else {
      out.summary.push_back(std::to_string(report.mismatches) + " of " + std::to_string(report.rows.size()) + " comparisons MISMATCH");
      out.exit_code = 3;
    }
    return out;
  }

  Output sigma_cmd() const {
    if (cfg_.n < 1) throw Error(ErrorKind::InvalidIndex, "n must be >= 1");
    Output out;
    out.value = std::to_string(sigma(cfg_.n));
    return out;
  }

  Output gronwall() const {
    const auto w = gronwall_witness(cfg_.t, cfg_.q, cfg_.k);
    Output out;
    out.columns = {"N", "ratio"};
    out.rows.push_back({std::to_string(w.n), fmt(w.ratio)});
    return out;
  }

  Output run() const {
    const std::string& c = cfg_.command;
    if (c == "count") return count();
    if (c == "zeta") return zeta();
    if (c == "growth") return growth();
    if (c == "classify") return classify();
    if (c == "overconv") return overconv();
    if (c == "poles") return poles();
    if (c == "primescan") return primescan();
    if (c == "validate") return validate();
    if (c == "sigma") return sigma_cmd();
    if (c == "gronwall") return gronwall();
    throw CLI::ValidationError("command", "unknown command " + c);
  }

 private:
  static Subgroup parse_hnf(int d, const std::string& text) {
    IntVec entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        entries.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--hnf", "bad entry \"" + item + "\"");
      }
    }
    if (entries.size() != static_cast<std::size_t>(d * d)) {
      throw CLI::ValidationError("--hnf", "expected " + std::to_string(d * d) + " row-major entries");
    }
    std::vector<IntVec> cols(static_cast<std::size_t>(d), IntVec(static_cast<std::size_t>(d)));
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) cols[static_cast<std::size_t>(col)][static_cast<std::size_t>(r)] = entries[static_cast<std::size_t>(r * d + col)];
    return hnf_canonicalize(d, cols);
  }

  static BigRational parse_eps(const std::string& text) {
    try {
      const auto slash = text.find('/');
      if (slash == std::string::npos) return BigRational(BigInt(text));
      return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--eps", "expected a rational a/b");
    }
  }

  const RunConfig& cfg_;
};

std::string spec_tag(const RunConfig& cfg) {
  if (cfg.spec_path.empty()) return "none";
  try {
    return spec_hash(load_spec(cfg.spec_path));
  } catch (const Error&) {
    return "invalid";
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void emit(std::ostream& os, const RunConfig& cfg, const std::map<std::string, std::string>& flags, const Output& out) {
  const std::string tag = spec_tag(cfg);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["header"] = {{"tool", "zdzeta"}, {"version", kVersion}, {"command", cfg.command}, {"spec", tag}, {"flags", flags}};
    j["summary"] = out.summary;
    if (out.value) j["value"] = *out.value;
    if (!out.columns.empty()) {
      j["columns"] = out.columns;
      j["rows"] = out.rows;
    }
    os << j.dump(2) << '\n';
    return;
  }
  os << "# zdzeta " << kVersion << " " << cfg.command << " spec=" << tag;
  for (const auto& [k, v] : flags) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& line : out.summary) os << "# " << line << '\n';
  if (out.value) os << *out.value << '\n';
  if (out.columns.empty()) return;
  for (std::size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << csv_field(out.columns[i]);
  os << '\n';
  for (const auto& row : out.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Periodic points and dynamical zeta functions of algebraic Z^d-actions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1U, 256U))->capture_default_str();
  app.add_flag("--decimal", cfg.decimal, "Render counts as decimal integers instead of factored strings");

  // Flags that enter the reproducibility header, per command.
  std::map<std::string, std::vector<std::string>> header_flags;
  const auto with_spec = [&](CLI::App* sub) { sub->add_option("--spec", cfg.spec_path, "Action spec JSON file")->required()->check(CLI::ExistingFile); };

  auto* count = app.add_subcommand("count", "F(Lambda) for one subgroup. Prints the count");
  with_spec(count);
  auto* hnf = count->add_option("--hnf", cfg.hnf, "Generator matrix, row-major, columns are generators (e.g. 3,1,0,1)");
  count->add_option("--n", cfg.n, "Period n for a d = 1 spec")->excludes(hnf);
  header_flags["count"] = {"hnf", "n"};

  auto* zeta = app.add_subcommand("zeta", "Orbit sums and zeta coefficients. CSV: k,a_k,c_k (with --radius: n,a_n,root,normalized_root,g_window)");
  with_spec(zeta);
  zeta->add_option("--terms", cfg.terms, "Number of coefficients N")->check(CLI::Range(1, 100000))->capture_default_str();
  zeta->add_flag("--radius", cfg.radius, "Emit the radius table a_n^{1/n} instead (needs N >= 10)");
  header_flags["zeta"] = {"terms", "radius"};

  auto* growth = app.add_subcommand("growth", "Growth scan of log F/[Lambda] with tail certificate (d >= 2). CSV: key,value");
  with_spec(growth);
  growth->add_option("--max-index", cfg.max_index, "Cutoff N")->check(CLI::Range(1, 100000))->capture_default_str();
  header_flags["growth"] = {"max-index"};

  auto* classify = app.add_subcommand("classify", "Rational or boundary verdict for d = 1. CSV: witness,degree,residue_order,p,bound_exponent,bound");
  with_spec(classify);
  classify->add_option("--terms", cfg.terms, "Terms for the radius check")->check(CLI::Range(10, 100000))->capture_default_str();
  header_flags["classify"] = {"terms"};

  auto* overconv = app.add_subcommand("overconv", "Normalized F(n_k)^{1/n_k} along n_k = ell p^k. CSV: witness,k,n,log_value,value,bound,within_bound");
  with_spec(overconv);
  overconv->add_option("--depth", cfg.depth, "Largest k")->check(CLI::Range(2, 40))->capture_default_str();
  header_flags["overconv"] = {"depth"};

  auto* poles = app.add_subcommand("poles", "Pole rings of a suspended spec. CSV: radius,log_radius,multiplicity,hnf");
  with_spec(poles);
  poles->add_option("--max-index", cfg.max_index, "Largest base index")->check(CLI::Range(1, 100000))->capture_default_str();
  header_flags["poles"] = {"max-index"};

  auto* primescan = app.add_subcommand("primescan", "Counts at prime indices. CSV: q,qualifying,above_threshold,m_p...,values");
  with_spec(primescan);
  primescan->add_option("--eps", cfg.eps, "Positive rational a/b")->capture_default_str();
  primescan->add_option("--qmax", cfg.qmax, "Largest prime index")->check(CLI::Range(2U, 100000U))->capture_default_str();
  header_flags["primescan"] = {"eps", "qmax"};

  auto* validate = app.add_subcommand("validate", "Formula against oracle for every [Lambda] <= N. CSV: index,hnf,formula_count,oracle_count,match");
  with_spec(validate);
  validate->add_option("--max-index", cfg.max_index, "Cutoff N")->check(CLI::Range(1, 2500))->capture_default_str();
  header_flags["validate"] = {"max-index"};

  auto* sigma_cmd = app.add_subcommand("sigma", "Divisor sum sigma(n)");
  sigma_cmd->add_option("--n", cfg.n, "n >= 1")->required();
  header_flags["sigma"] = {"n"};

  auto* gronwall = app.add_subcommand("gronwall", "Smallest N = t (mod q) divisible by the primes <= k not dividing q. CSV: N,ratio");
  gronwall->add_option("--t", cfg.t, "Residue")->required();
  gronwall->add_option("--q", cfg.q, "Modulus")->required();
  gronwall->add_option("--k", cfg.k, "Prime cutoff")->required();
  header_flags["gronwall"] = {"t", "q", "k"};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  std::map<std::string, std::string> flags;
  for (const auto& name : header_flags[cfg.command]) {
    const auto* opt = sub->get_option_no_throw("--" + name);
    if (opt && opt->count()) flags[name] = opt->as<std::string>();
    else if (opt) flags[name] = opt->get_default_str().empty() ? "-" : opt->get_default_str();
  }
  if (cfg.decimal) flags["decimal"] = "true";

  try {
    const Runner runner(cfg);
    const Output out = runner.run();
    if (cfg.output.empty()) {
      emit(std::cout, cfg, flags, out);
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidSpec, "cannot write " + cfg.output);
      emit(file, cfg, flags, out);
    }
    return out.exit_code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const zdzeta::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const zdzeta::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
