#include "rclmc/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rclmc/diagnostics.hpp"
#include "rclmc/moment_oracle.hpp"
#include "rclmc/rng.hpp"
#include "rclmc/validate.hpp"

namespace rclmc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected an integer, got '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected an unsigned integer, got '" + s + "'");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TargetModel make_target(const SweepSpec& spec) {
  if (spec.target_name == "gaussian")
    return make_gaussian_target(spec.dim, spec.gauss_mean, spec.gauss_sigma2);
  if (spec.target_name == "mixture")
    return make_mixture_target(spec.dim, spec.mixture_c);
  throw std::invalid_argument("unknown target '" + spec.target_name + "'");
}

double resolve_eta(const SweepSpec& spec, SamplerVariant kind, double h) {
  switch (spec.eta_rule) {
    case EtaRule::fixed:
      return spec.eta_param;
    case EtaRule::h_proportional:
      return spec.eta_param * h;
    case EtaRule::h_cubed_proportional:
      return spec.eta_param * h * h * h;
    case EtaRule::by_kind_default:
      return is_underdamped(kind) ? 0.1 * h * h * h : 0.1 * h;
  }
  return 0.1 * h;
}

double resolve_gamma(const SweepSpec& spec, const TargetModel& target) {
  return spec.gamma_auto ? 1.0 / target.lip_grad : spec.gamma;
}

ParsedConfig parse_config(const std::string& text) {
  SweepSpec spec;
  std::map<std::string, bool> seen;

  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (value.empty()) throw ConfigError(line, "empty value for '" + key + "'");
    if (seen[key]) throw ConfigError(line, "duplicate key '" + key + "'");
    seen[key] = true;

    if (key == "target") {
      if (value != "gaussian" && value != "mixture")
        throw ConfigError(line, "target must be 'gaussian' or 'mixture'");
      spec.target_name = value;
    } else if (key == "dim") {
      spec.dim = static_cast<int>(parse_int(value, line));
      if (spec.dim < 1) throw ConfigError(line, "dim must be >= 1");
    } else if (key == "mean") {
      spec.gauss_mean = parse_double(value, line);
    } else if (key == "sigma2") {
      spec.gauss_sigma2 = parse_double(value, line);
      if (spec.gauss_sigma2 <= 0) throw ConfigError(line, "sigma2 must be > 0");
    } else if (key == "c") {
      spec.mixture_c = parse_double(value, line);
      if (spec.mixture_c <= 0) throw ConfigError(line, "c must be > 0");
    } else if (key == "samplers") {
      for (const auto& tok : split_list(value)) {
        const auto v = parse_variant(tok);
        if (!v) throw ConfigError(line, "unknown sampler '" + tok + "'");
        spec.samplers.push_back(*v);
      }
      if (spec.samplers.empty()) throw ConfigError(line, "empty sweep axis");
    } else if (key == "h") {
      for (const auto& tok : split_list(value)) {
        const double h = parse_double(tok, line);
        if (h <= 0) throw ConfigError(line, "h values must be > 0");
        spec.h_values.push_back(h);
      }
      if (spec.h_values.empty()) throw ConfigError(line, "empty sweep axis");
    } else if (key == "eta_rule") {
      if (value == "default") {
        spec.eta_rule = EtaRule::by_kind_default;
      } else {
        const auto colon = value.find(':');
        if (colon == std::string::npos)
          throw ConfigError(line,
                            "eta_rule must be default, fixed:<v>, h_prop:<f> "
                            "or h3_prop:<f>");
        const std::string rule = value.substr(0, colon);
        const double param = parse_double(value.substr(colon + 1), line);
        if (param <= 0) throw ConfigError(line, "eta_rule parameter must be > 0");
        if (rule == "fixed")
          spec.eta_rule = EtaRule::fixed;
        else if (rule == "h_prop")
          spec.eta_rule = EtaRule::h_proportional;
        else if (rule == "h3_prop")
          spec.eta_rule = EtaRule::h_cubed_proportional;
        else
          throw ConfigError(line, "unknown eta_rule '" + rule + "'");
        spec.eta_param = param;
      }
    } else if (key == "gamma") {
      if (value == "auto") {
        spec.gamma_auto = true;
      } else {
        spec.gamma_auto = false;
        spec.gamma = parse_double(value, line);
        if (spec.gamma <= 0) throw ConfigError(line, "gamma must be > 0");
      }
    } else if (key == "n_chains") {
      const auto n = parse_int(value, line);
      if (n < 1) throw ConfigError(line, "n_chains must be >= 1");
      spec.n_chains = static_cast<std::size_t>(n);
    } else if (key == "steps") {
      if (value == "auto") {
        spec.steps_auto = true;
      } else {
        spec.steps = parse_int(value, line);
        if (spec.steps < 0) throw ConfigError(line, "steps must be >= 0");
      }
    } else if (key == "steps_cap") {
      spec.steps_cap = parse_int(value, line);
      if (spec.steps_cap < 1) throw ConfigError(line, "steps_cap must be >= 1");
    } else if (key == "seed") {
      spec.seed = parse_u64(value, line);
    } else if (key == "init_mean") {
      spec.init.mean_x = parse_double(value, line);
    } else if (key == "init_std") {
      spec.init.std_x = parse_double(value, line);
      if (spec.init.std_x <= 0) throw ConfigError(line, "init_std must be > 0");
    } else if (key == "init_mean_v") {
      spec.init.mean_v = parse_double(value, line);
    } else if (key == "init_std_v") {
      spec.init.std_v = parse_double(value, line);
      if (spec.init.std_v <= 0) throw ConfigError(line, "init_std_v must be > 0");
    } else if (key == "gradients") {
      if (value == "finite_difference")
        spec.mode = GradMode::finite_difference;
      else if (value == "exact")
        spec.mode = GradMode::exact;
      else
        throw ConfigError(line, "gradients must be finite_difference or exact");
    } else if (key == "out") {
      spec.out_path = value;
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }

  for (const char* req : {"target", "dim", "samplers", "h", "n_chains", "seed"})
    if (!seen[req]) throw ConfigError(0, std::string("missing required key '") + req + "'");
  if (!seen["steps"])
    throw ConfigError(0, "missing required key 'steps' (an integer or 'auto')");
  if (spec.steps_auto &&
      !(spec.target_name == "gaussian" && spec.gauss_sigma2 == 1.0 &&
        spec.gauss_mean == 0.0))
    throw ConfigError(0, "steps = auto requires the standard gaussian target");

  ParsedConfig out;
  out.spec = spec;

  const TargetModel target = make_target(spec);
  const double gamma = resolve_gamma(spec, target);
  for (const auto kind : spec.samplers) {
    for (const double h : spec.h_values) {
      KernelParams p{h, resolve_eta(spec, kind, h), gamma};
      const AdmissibilityReport rep = is_underdamped(kind)
                                          ? validate_underdamped_params(target, p)
                                          : validate_overdamped_params(target, p);
      if (!rep.all_pass()) {
        std::ostringstream os;
        os << variant_name(kind) << " h=" << h << ": ";
        if (!rep.theory_applicable) {
          os << "theory inapplicable (mu = 0); run permitted";
        } else {
          bool first = true;
          for (const auto& c : rep.checks) {
            if (c.indeterminate || c.pass) continue;
            if (!first) os << "; ";
            os << "violates " << c.name << " (value " << c.value << ", bound "
               << c.bound << ")";
            first = false;
          }
        }
        out.warnings.push_back(os.str());
      }
    }
  }
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  SweepResult result;
  result.spec = spec;

  auto target = std::make_shared<const TargetModel>(make_target(spec));
  const double gamma = resolve_gamma(spec, *target);

  std::uint64_t cell_index = 0;
  for (const auto kind : spec.samplers) {
    for (const double h : spec.h_values) {
      const double eta = resolve_eta(spec, kind, h);
      const std::uint64_t cell_master = chain_seed(spec.seed, cell_index);
      ++cell_index;

      std::int64_t steps = spec.steps;
      if (spec.steps_auto) {
        const InitMoments im{spec.init.mean_x, spec.init.std_x * spec.init.std_x,
                             spec.init.mean_v, spec.init.std_v * spec.init.std_v};
        const PlateauSearch ps = oracle_steps_to_plateau(
            kind, spec.dim, h, gamma, im, MomentObservable::x_sq,
            static_cast<int>(spec.steps_cap));
        steps = ps.steps;
      }

      ChainConfig cfg;
      cfg.target = target;
      cfg.kind = {kind, spec.mode};
      cfg.params = {h, eta, gamma};
      cfg.steps = steps;
      cfg.seed = cell_master;
      cfg.init = spec.init;

      const auto t0 = std::chrono::steady_clock::now();
      const EnsembleResult ens = run_ensemble(cfg, spec.n_chains, threads);
      const double wall_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();

      SweepRow row;
      row.sampler = std::string(variant_name(kind));
      row.d = spec.dim;
      row.h = h;
      row.eta = eta;
      row.steps = steps;
      row.n_chains = spec.n_chains;
      row.evals = ens.total_evals;
      row.wall_ms = wall_ms;
      row.seed = cell_master;
      row.diverged = ens.diverged_count;
      row.failed =
          2 * ens.diverged_count > spec.n_chains ||
          ens.chains.size() - ens.diverged_count < 2;
      if (row.failed) {
        row.error = std::nan("");
        row.std_error = std::nan("");
        result.any_failed = true;
      } else {
        const MomentErrorReport mer =
            moment_error(ens, phi_x1_sq, target->ref_x1_sq);
        row.error = mer.error;
        row.std_error = mer.std_error;
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string csv_string(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  std::ostringstream os;
  os << "# rclmc " << kVersion << " sweep\n";
  os << "# target = " << spec.target_name << ", dim = " << spec.dim;
  if (spec.target_name == "gaussian")
    os << ", mean = " << fmt17(spec.gauss_mean)
       << ", sigma2 = " << fmt17(spec.gauss_sigma2);
  else
    os << ", c = " << fmt17(spec.mixture_c);
  os << "\n";
  os << "# n_chains = " << spec.n_chains << ", steps = "
     << (spec.steps_auto ? std::string("auto(cap ") + std::to_string(spec.steps_cap) + ")"
                         : std::to_string(spec.steps))
     << ", seed = " << spec.seed << ", gradients = "
     << (spec.mode == GradMode::exact ? "exact" : "finite_difference") << "\n";
  os << "sampler,d,h,eta,M,N,error,std_error,evals,wall_ms,seed\n";
  for (const auto& r : result.rows) {
    os << r.sampler << ',' << r.d << ',' << fmt17(r.h) << ',' << fmt17(r.eta)
       << ',' << r.steps << ',' << r.n_chains << ',' << fmt17(r.error) << ','
       << fmt17(r.std_error) << ',' << r.evals << ','
       << fmt17(spec.record_timings ? r.wall_ms : 0.0) << ',' << r.seed << '\n';
  }
  return os.str();
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << csv_string(result);
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace rclmc
