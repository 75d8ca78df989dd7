#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "fzeta/explicit.hpp"
#include "fzeta/gamma.hpp"
#include "fzeta/io.hpp"
#include "fzeta/operator.hpp"
#include "fzeta/parallel.hpp"
#include "fzeta/strings.hpp"
#include "fzeta/universality.hpp"
#include "fzeta/zeta.hpp"

using namespace fzeta;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;
constexpr int kExitGuard = 4;

struct Globals {
  int workers = 0;
  std::string out;
  double abs_tol = 1e-13;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorKind::ParseError, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_json(const std::string& path, const json& doc) {
  Output out(path);
  out.stream() << doc.dump(2) << '\n';
}

std::vector<double> split_colon(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_double(item));
  if (parts.size() != expected) throw Error(ErrorKind::ParseError, std::string("malformed ") + what + " '" + text + "'");
  return parts;
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_double(s));
  return out;
}

BaseFunction parse_base(const std::string& text) {
  if (text == "zeta") return BaseFunction::zeta();
  if (text == "chi4") return BaseFunction::dirichlet(DirichletCharacter::chi4());
  if (text.rfind("hurwitz:", 0) == 0) return BaseFunction::hurwitz(parse_double(text.substr(8)));
  if (text.rfind("principal:", 0) == 0) {
    return BaseFunction::dirichlet(DirichletCharacter::principal(parse_int(text.substr(10))));
  }
  throw Error(ErrorKind::ParseError, "unknown base function '" + text + "'");
}

DirichletCharacter parse_character(const std::string& text) {
  if (text == "chi4") return DirichletCharacter::chi4();
  if (text.rfind("principal:", 0) == 0) return DirichletCharacter::principal(parse_int(text.substr(10)));
  // q:v0,v1,...,v_{q-1} with complex entries
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "unknown character '" + text + "'");
  const std::int64_t q = parse_int(text.substr(0, colon));
  std::vector<cplx> values;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_complex(item));
  return DirichletCharacter::from_values(q, std::move(values));
}

CompactBox parse_box(const std::string& text, int grid_c, int grid_t) {
  if (text == "tiny") return CompactBox::rectangle(0.74, 0.76, 0.05, 5, 5);
  const auto p = split_colon(text, 3, "box");
  return CompactBox::rectangle(p[0], p[1], p[2], grid_c, grid_t);
}

TargetFunction parse_target(const std::string& text, const BaseFunction& base, const CompactBox& box,
                            const EvalOptions& opts) {
  if (text == "self") return TargetFunction::self();
  if (text.rfind("const:", 0) == 0) return TargetFunction::constant(parse_complex(text.substr(6)));
  if (text.rfind("translate:", 0) == 0) {
    const double a = parse_double(text.substr(10));
    return TargetFunction::expression(text, [base, a, opts](cplx s) { return base(s + cplx(0.0, a), opts); });
  }
  if (text.rfind("linear:", 0) == 0) {
    const cplx a = parse_complex(text.substr(7));
    return TargetFunction::expression(text, [a](cplx s) { return s - a; });
  }
  if (text.rfind("file:", 0) == 0) {
    const auto rows = read_target_file(text.substr(5));
    const auto pts = box.points();
    if (rows.size() != pts.size()) throw Error(ErrorKind::ParseError, "target file does not match the box grid");
    std::vector<cplx> values;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (std::abs(rows[j].first - pts[j]) > 1e-9) throw Error(ErrorKind::ParseError, "target file nodes differ from the box grid");
      values.push_back(rows[j].second);
    }
    return TargetFunction::samples(text, std::move(values));
  }
  throw Error(ErrorKind::ParseError, "unknown target '" + text + "'");
}

std::function<cplx(cplx)> parse_psi(const std::string& text, const EvalOptions& opts) {
  if (text == "zeta") return [opts](cplx s) { return zeta(s, opts); };
  if (text == "identity") return [](cplx s) { return s; };
  if (text.rfind("poly:", 0) == 0) {
    // poly:a0,a1,... meaning a0 + a1 s + ...
    std::vector<cplx> coef;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) coef.push_back(parse_complex(item));
    return [coef](cplx s) {
      cplx acc = 0.0;
      for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * s + *it;
      return acc;
    };
  }
  throw Error(ErrorKind::ParseError, "unknown function '" + text + "'");
}

void emit_scan(const Globals& g, const std::string& csv_path, const ScanResult& r) {
  write_json(g.out, scan_to_json(r));
  if (!csv_path.empty()) {
    Output csv(csv_path);
    write_scan_csv(csv.stream(), r);
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::BadAlpha:
    case ErrorKind::BoxOutsideStrip:
    case ErrorKind::ProfileDiscontinuous:
    case ErrorKind::EmptyTruncation:
      return kExitInput;
    case ErrorKind::GuardRejected:
      return kExitGuard;
    default:
      return kExitCompute;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeta functions, fractal strings, spectral operators and universality scans"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  if (const char* env = std::getenv("ZS_WORKERS")) {
    try {
      g.workers = static_cast<int>(parse_int(env));
      if (g.workers < 1) throw Error(ErrorKind::ParseError, "ZS_WORKERS must be positive");
    } catch (const Error&) {
      std::cerr << "error: ParseError: ZS_WORKERS must be a positive integer\n";
      return kExitInput;
    }
  }
  app.add_option("--workers", g.workers, "worker threads (default: ZS_WORKERS)")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", g.out, "output file (default: stdout)");
  app.add_option("--tol", g.abs_tol, "absolute tolerance per function evaluation");

  std::function<void()> action;
  auto opts = [&] {
    EvalOptions o;
    o.abs_tol = g.abs_tol;
    o.validate();
    return o;
  };

  // ---- zeta -------------------------------------------------------------
  auto* zeta_cmd = app.add_subcommand("zeta", "zeta, xi, Hurwitz, Dirichlet L and Euler products");
  zeta_cmd->require_subcommand(1);
  std::vector<std::string> s_list;
  auto rows_for = [&](const std::function<std::pair<cplx, double>(cplx)>& f) {
    std::vector<std::vector<double>> rows;
    for (const auto& text : s_list) {
      const cplx s = parse_complex(text);
      const auto [v, err] = f(s);
      rows.push_back({s.real(), s.imag(), v.real(), v.imag(), err});
    }
    Output out(g.out);
    write_csv(out.stream(), {"re_s", "im_s", "re_val", "im_val", "est_err"}, rows);
  };

  auto* z_eval = zeta_cmd->add_subcommand("eval", "Riemann zeta");
  z_eval->add_option("--s", s_list, "points")->required();
  z_eval->callback([&] {
    action = [&] {
      rows_for([&](cplx s) {
        const Estimate e = zeta_estimate(s, opts());
        return std::pair{e.value, e.error_bound};
      });
    };
  });

  auto* z_xi = zeta_cmd->add_subcommand("xi", "completed zeta pi^{-s/2} Gamma(s/2) zeta(s)");
  z_xi->add_option("--s", s_list, "points");
  bool check_fe = false;
  int n_points = 100;
  std::uint64_t seed = 1;
  double im_range = 30.0;
  z_xi->add_flag("--check-functional-equation", check_fe, "compare xi(s) and xi(1-s) at random strip points");
  z_xi->add_option("--n", n_points, "number of random points");
  z_xi->add_option("--seed", seed, "seed for the random points");
  z_xi->add_option("--im-range", im_range, "random points have |Im s| <= this");
  z_xi->callback([&] {
    action = [&] {
      if (!check_fe) {
        rows_for([&](cplx s) { return std::pair{completed_xi(s, opts()), opts().abs_tol}; });
        return;
      }
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> re(0.0, 1.0), im(-im_range, im_range);
      std::vector<std::vector<double>> rows;
      double worst = 0.0;
      for (int k = 0; k < n_points; ++k) {
        const double x = re(rng);
        const double y = im(rng);
        const cplx s(x, y);
        const double r = std::abs(completed_xi(s, opts()) - completed_xi(1.0 - s, opts()));
        worst = std::max(worst, r);
        rows.push_back({x, y, r});
      }
      Output out(g.out);
      write_csv(out.stream(), {"re_s", "im_s", "residual"}, rows);
      std::cerr << "max_residual " << format_double(worst) << '\n';
    };
  });

  auto* z_hur = zeta_cmd->add_subcommand("hurwitz", "Hurwitz zeta");
  std::string alpha_text = "1";
  z_hur->add_option("--s", s_list, "points")->required();
  z_hur->add_option("--alpha", alpha_text, "shift in (0, 1]")->required();
  z_hur->callback([&] {
    action = [&] {
      const double alpha = parse_double(alpha_text);
      rows_for([&](cplx s) {
        const Estimate e = hurwitz_estimate(s, alpha, opts());
        return std::pair{e.value, e.error_bound};
      });
    };
  });

  auto* z_l = zeta_cmd->add_subcommand("dirichlet-l", "Dirichlet L-function");
  std::string chi_text = "chi4";
  z_l->add_option("--s", s_list, "points")->required();
  z_l->add_option("--chi", chi_text, "chi4, principal:q, or q:v0,...,v_{q-1}");
  z_l->callback([&] {
    action = [&] {
      const auto chi = parse_character(chi_text);
      rows_for([&](cplx s) { return std::pair{dirichlet_l(s, chi, opts()), opts().abs_tol}; });
    };
  });

  auto* z_ep = zeta_cmd->add_subcommand("euler-product", "truncated Euler product over p <= n-max");
  std::int64_t ep_n = 1000;
  z_ep->add_option("--s", s_list, "points")->required();
  z_ep->add_option("--n-max", ep_n, "largest prime bound");
  z_ep->callback([&] {
    action = [&] {
      rows_for([&](cplx s) {
        const cplx v = euler_product_truncated(s, ep_n);
        return std::pair{v, std::abs(v - zeta(s, opts()))};
      });
    };
  });

  // ---- string -----------------------------------------------------------
  auto* str_cmd = app.add_subcommand("string", "generalized fractal strings");
  str_cmd->require_subcommand(1);
  std::string def_path;
  std::vector<std::string> x_list;
  auto load = [&] { return read_string_definition(def_path); };

  auto* s_count = str_cmd->add_subcommand("counting", "geometric counting function");
  s_count->add_option("--def", def_path)->required();
  s_count->add_option("--x", x_list)->required();
  s_count->callback([&] {
    action = [&] {
      const auto def = load();
      const auto xs = parse_list(x_list);
      const auto eta = def.materialize(*std::max_element(xs.begin(), xs.end()));
      std::vector<std::vector<double>> rows;
      for (double x : xs) {
        const cplx n = counting_function(eta, x);
        rows.push_back({x, n.real(), n.imag()});
      }
      Output out(g.out);
      write_csv(out.stream(), {"x", "re", "im"}, rows);
    };
  });

  auto* s_zeta = str_cmd->add_subcommand("zeta", "geometric zeta function");
  s_zeta->add_option("--def", def_path)->required();
  s_zeta->add_option("--s", s_list)->required();
  s_zeta->callback([&] {
    action = [&] {
      const auto eta = load().materialize();
      std::vector<std::vector<double>> rows;
      for (const auto& t : s_list) {
        const cplx s = parse_complex(t);
        const cplx v = geometric_zeta_closed(eta, s);
        rows.push_back({s.real(), s.imag(), v.real(), v.imag()});
      }
      Output out(g.out);
      write_csv(out.stream(), {"re_s", "im_s", "re", "im"}, rows);
    };
  });

  auto* s_dim = str_cmd->add_subcommand("dimension", "abscissa of convergence");
  s_dim->add_option("--def", def_path)->required();
  s_dim->callback([&] {
    action = [&] {
      const Dimension d = dimension(load().materialize());
      write_json(g.out, {{"dimension", format_double(d.value)}, {"estimate", d.estimate}});
    };
  });

  auto* s_spec = str_cmd->add_subcommand("spectral", "spectral counting, or the product formula check with --s");
  double spec_X = 1e4;
  s_spec->add_option("--def", def_path)->required();
  s_spec->add_option("--x", x_list);
  s_spec->add_option("--s", s_list);
  s_spec->add_option("--X", spec_X, "atom cutoff for the direct spectral sum");
  s_spec->callback([&] {
    action = [&] {
      const auto def = load();
      Output out(g.out);
      if (!s_list.empty()) {
        const auto eta = def.materialize(spec_X);
        std::vector<std::vector<double>> rows;
        for (const auto& t : s_list) {
          const cplx s = parse_complex(t);
          const auto c = spectral_zeta_check(eta, s, spec_X, opts());
          rows.push_back({s.real(), s.imag(), c.product.real(), c.product.imag(), c.direct.real(), c.direct.imag(),
                          c.discrepancy, c.tail_bound});
        }
        write_csv(out.stream(),
                  {"re_s", "im_s", "re_product", "im_product", "re_direct", "im_direct", "discrepancy", "tail_bound"},
                  rows);
        return;
      }
      const auto xs = parse_list(x_list);
      if (xs.empty()) throw Error(ErrorKind::InvalidArgument, "give --x or --s");
      const auto eta = def.materialize(*std::max_element(xs.begin(), xs.end()));
      std::vector<std::vector<double>> rows;
      for (double x : xs) {
        const cplx n = spectral_counting(eta, x);
        rows.push_back({x, n.real(), n.imag()});
      }
      write_csv(out.stream(), {"x", "re", "im"}, rows);
    };
  });

  auto* s_dims = str_cmd->add_subcommand("dimensions", "complex dimensions and residues");
  int k_max = 2;
  s_dims->add_option("--def", def_path)->required();
  s_dims->add_option("--k-max", k_max);
  s_dims->callback([&] {
    action = [&] {
      const auto def = load();
      if (!def.kind) throw Error(ErrorKind::UnsupportedKind, "atom lists have no poles");
      std::vector<std::vector<double>> rows;
      for (const auto& d : complex_dimensions(*def.kind, k_max)) {
        const cplx q = residue_by_quadrature(*def.kind, d);
        rows.push_back({static_cast<double>(d.index), d.omega.real(), d.omega.imag(), d.residue.real(),
                        d.residue.imag(), q.real(), q.imag()});
      }
      Output out(g.out);
      write_csv(out.stream(), {"k", "re_omega", "im_omega", "re_residue", "im_residue", "re_quadrature", "im_quadrature"},
                rows);
    };
  });

  auto* s_exp = str_cmd->add_subcommand("explicit-compare", "explicit formula against direct counting");
  int midpoints = 20;
  double lo = 2.0, hi = 100.0;
  std::string level_text = "geometric";
  s_exp->add_option("--def", def_path)->required();
  s_exp->add_option("--k-max", k_max);
  s_exp->add_option("--midpoints", midpoints);
  s_exp->add_option("--lo", lo);
  s_exp->add_option("--hi", hi);
  s_exp->add_option("--x", x_list, "explicit points instead of midpoints");
  s_exp->add_option("--level", level_text)->check(CLI::IsMember({"geometric", "spectral"}));
  s_exp->callback([&] {
    action = [&] {
      const auto xs = x_list.empty() ? log_midpoints(lo, hi, midpoints) : parse_list(x_list);
      const double top = xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
      const auto eta = load().materialize(top);
      const auto rep = compare_explicit_vs_direct(eta, xs, k_max,
                                                  level_text == "geometric" ? Level::Geometric : Level::Spectral, opts());
      json rows = json::array();
      for (const auto& r : rep.rows) {
        rows.push_back({{"x", format_double(r.x)},
                        {"direct", format_double(r.direct)},
                        {"explicit", format_double(r.explicit_value)},
                        {"error", format_double(r.error)},
                        {"at_atom", r.at_atom}});
      }
      write_json(g.out, {{"k_max", k_max},
                         {"rows", rows},
                         {"max_error", format_double(rep.max_error)},
                         {"mean_error", format_double(rep.mean_error)},
                         {"half_jump_mode", rep.half_jump_mode}});
    };
  });

  auto* s_norm = str_cmd->add_subcommand("normalize", "rewrite a definition file in canonical form");
  s_norm->add_option("--def", def_path)->required();
  s_norm->callback([&] { action = [&] { write_json(g.out, string_definition_to_json(load())); }; });

  // ---- operator ---------------------------------------------------------
  auto* op_cmd = app.add_subcommand("operator", "truncated shifts and spectral operators");
  op_cmd->require_subcommand(1);
  double c = 0.75, T = 1.0, tau = 0.0, sigma = 10.0, refine_tol = 1e-8, step = 1e-3, tau_max = 100.0;
  std::string psi_text = "zeta";

  auto* o_seg = op_cmd->add_subcommand("segment", "spectrum of the truncated shift");
  o_seg->add_option("--c", c)->required();
  o_seg->add_option("--T", T)->required();
  o_seg->callback([&] {
    action = [&] {
      const auto seg = segment_spectrum(TruncatedShift::standard(c, T));
      write_json(g.out, {{"c", format_double(seg.c)},
                         {"tau_lo", format_double(seg.tau_lo)},
                         {"tau_hi", format_double(seg.tau_hi)},
                         {"operator_norm", format_double(std::hypot(seg.c, seg.tau_hi))}});
    };
  });

  auto* o_norm = op_cmd->add_subcommand("norm", "norm of psi applied to the truncated shift");
  bool adjoint = false;
  o_norm->add_option("--psi", psi_text, "zeta, identity, or poly:a0,a1,...");
  o_norm->add_option("--c", c)->required();
  o_norm->add_option("--T", T)->required();
  o_norm->add_option("--refine-tol", refine_tol);
  o_norm->add_flag("--adjoint", adjoint, "also report the norm on the reflected segment");
  o_norm->callback([&] {
    action = [&] {
      NormOptions no;
      no.refine_tol = refine_tol;
      const auto psi = parse_psi(psi_text, opts());
      const auto shift = TruncatedShift::standard(c, T);
      json doc;
      if (adjoint) {
        const auto [a, b] = adjoint_norm_check(shift, psi, no);
        doc = {{"norm", format_double(a.norm)},
               {"tau_star", format_double(a.tau_star)},
               {"adjoint_norm", format_double(b.norm)},
               {"adjoint_tau_star", format_double(b.tau_star)}};
      } else {
        const auto r = op_function_norm(shift, psi, no);
        doc = {{"norm", format_double(r.norm)}, {"tau_star", format_double(r.tau_star)}, {"evaluations", r.evaluations}};
      }
      write_json(g.out, doc);
    };
  });

  auto* o_eig = op_cmd->add_subcommand("eigen-residual", "approximate eigenfunction residual");
  o_eig->add_option("--c", c)->required();
  o_eig->add_option("--tau", tau)->required();
  o_eig->add_option("--sigma", sigma)->required();
  o_eig->add_option("--step", step);
  o_eig->callback([&] {
    action = [&] {
      const double half = std::max(40.0, 6.0 * sigma);
      const auto r = approx_eigenfunction(c, tau, sigma, -half, half, step);
      write_json(g.out, {{"residual", format_double(r.residual)},
                         {"expected", format_double(1.0 / (sigma * std::sqrt(2.0)))}});
    };
  });

  auto* o_range = op_cmd->add_subcommand("range-sample", "values of zeta on a vertical line");
  std::vector<std::string> targets;
  o_range->add_option("--c", c)->required();
  o_range->add_option("--tau-max", tau_max)->required();
  o_range->add_option("--step", step)->required();
  o_range->add_option("--targets", targets, "report nearest-sample distances to these points");
  o_range->callback([&] {
    action = [&] {
      const auto samples = zeta_range_sample(c, tau_max, step, opts());
      Output out(g.out);
      if (!targets.empty()) {
        std::vector<cplx> pts;
        for (const auto& t : targets) pts.push_back(parse_complex(t));
        const auto d = nearest_sample_distances(samples, pts);
        std::vector<std::vector<double>> rows;
        for (std::size_t j = 0; j < pts.size(); ++j) rows.push_back({pts[j].real(), pts[j].imag(), d[j]});
        write_csv(out.stream(), {"re_target", "im_target", "distance"}, rows);
        return;
      }
      std::vector<std::vector<double>> rows;
      for (std::size_t k = 0; k < samples.size(); ++k) {
        rows.push_back({static_cast<double>(k + 1) * step, samples[k].real(), samples[k].imag()});
      }
      write_csv(out.stream(), {"tau", "re", "im"}, rows);
    };
  });

  auto* o_apply = op_cmd->add_subcommand("apply", "spectral operator sum_n f(t - log n)");
  std::string grid_path;
  std::int64_t n_max = 0;
  double tail_tol = 0.0;
  o_apply->add_option("--f", grid_path, "CSV t,re,im")->required();
  o_apply->add_option("--c", c)->required();
  o_apply->add_option("--n-max", n_max);
  o_apply->add_option("--tail-tol", tail_tol);
  o_apply->callback([&] {
    action = [&] {
      const auto f = read_grid_file(grid_path, c);
      if ((n_max > 0) == (tail_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "give exactly one of --n-max, --tail-tol");
      const auto r = n_max > 0 ? apply_spectral_operator(f, n_max) : apply_spectral_operator_tol(f, tail_tol);
      Output out(g.out);
      write_grid_csv(out.stream(), r);
    };
  });

  auto* o_euler = op_cmd->add_subcommand("euler-factor", "sum_m f(t - m log p)");
  std::int64_t prime = 2, m_max = 10;
  o_euler->add_option("--f", grid_path, "CSV t,re,im")->required();
  o_euler->add_option("--c", c)->required();
  o_euler->add_option("--p", prime)->required();
  o_euler->add_option("--m-max", m_max);
  o_euler->callback([&] {
    action = [&] {
      const auto r = apply_euler_factor(read_grid_file(grid_path, c), prime, m_max);
      Output out(g.out);
      write_grid_csv(out.stream(), r);
    };
  });

  // ---- universality -----------------------------------------------------
  auto* u_cmd = app.add_subcommand("universality", "shift scans");
  u_cmd->require_subcommand(1);
  std::string target_text = "self", box_text = "0.6:0.9:1", base_text = "zeta", csv_path;
  int grid_c = 64, grid_t = 64;
  double tau_step = 0.01;
  std::vector<std::string> eps_text{"0.1", "0.5", "1"};
  bool guard = false, no_polish = false;
  auto add_scan_opts = [&](CLI::App* sc) {
    sc->add_option("--target", target_text, "self, const:v, translate:a, linear:a, file:path");
    sc->add_option("--box", box_text, "c_lo:c_hi:t0 or tiny");
    sc->add_option("--grid-c", grid_c);
    sc->add_option("--grid-t", grid_t);
    sc->add_option("--eps", eps_text);
    sc->add_option("--csv", csv_path, "CSV mirror of the scan");
  };
  auto scan_opts = [&] {
    ScanOptions so;
    so.eval = opts();
    so.polish = !no_polish;
    so.require_nonvanishing = guard;
    return so;
  };

  auto* u_scan = u_cmd->add_subcommand("scan", "continuous shift scan");
  add_scan_opts(u_scan);
  u_scan->add_option("--base", base_text, "zeta, hurwitz:a, chi4, principal:q");
  u_scan->add_option("--tau-max", tau_max);
  u_scan->add_option("--step", tau_step);
  u_scan->add_flag("--guard", guard, "reject targets vanishing on the grid");
  u_scan->add_flag("--no-polish", no_polish);
  u_scan->callback([&] {
    action = [&] {
      const auto base = parse_base(base_text);
      const auto box = parse_box(box_text, grid_c, grid_t);
      const auto r = scan_continuous(parse_target(target_text, base, box, opts()), box, base, tau_max, tau_step,
                                     parse_list(eps_text), scan_opts());
      emit_scan(g, csv_path, r);
    };
  });

  auto* u_disc = u_cmd->add_subcommand("scan-discrete", "shifts n delta, 1 <= n <= n-max");
  double delta = 0.01;
  std::int64_t disc_n = 1000;
  add_scan_opts(u_disc);
  u_disc->add_option("--base", base_text);
  u_disc->add_option("--delta", delta);
  u_disc->add_option("--n-max", disc_n);
  u_disc->add_flag("--guard", guard);
  u_disc->callback([&] {
    action = [&] {
      const auto base = parse_base(base_text);
      const auto box = parse_box(box_text, grid_c, grid_t);
      const auto r = scan_discrete(parse_target(target_text, base, box, opts()), box, base, delta, disc_n,
                                   parse_list(eps_text), scan_opts());
      emit_scan(g, csv_path, r);
    };
  });

  auto* u_quant = u_cmd->add_subcommand("quantized", "operator-norm distance on truncated shifts");
  std::string calk_text = "0.6:0.9", profile_text;
  double T0 = 1.0;
  u_quant->add_option("--target", target_text);
  u_quant->add_option("--base", base_text);
  u_quant->add_option("--calK", calk_text, "c_lo:c_hi");
  u_quant->add_option("--T0", T0);
  u_quant->add_option("--tau", tau)->required();
  u_quant->add_option("--grid-c", grid_c);
  u_quant->add_option("--grid-t", grid_t);
  u_quant->add_option("--refine-tol", refine_tol);
  u_quant->add_option("--profile", profile_text, "triangular: T(c) = 2 min(c - c_lo, c_hi - c)");
  u_quant->callback([&] {
    action = [&] {
      const auto base = parse_base(base_text);
      const auto k = split_colon(calk_text, 2, "calK");
      CompactBox box = CompactBox::rectangle(k[0], k[1], T0, grid_c, grid_t);
      if (profile_text == "triangular") {
        box = CompactBox::with_profile(
            k[0], k[1], [&](double x) { return 2.0 * std::min(x - k[0], k[1] - x); }, grid_c, grid_t);
      } else if (!profile_text.empty()) {
        throw Error(ErrorKind::ParseError, "unknown profile '" + profile_text + "'");
      }
      NormOptions no;
      no.refine_tol = refine_tol;
      const auto target = parse_target(target_text, base, box, opts());
      const auto q = quantized_sup_general(target, box, tau, base, no, opts());
      const double grid_sup = sup_distance(target, tau, box, base, opts());
      const double grid_tol = grid_tolerance(target, tau, box, base, opts());
      write_json(g.out, {{"quantized", format_double(q.value)},
                         {"c_star", format_double(q.c_star)},
                         {"tau_star", format_double(q.tau_star)},
                         {"grid_sup", format_double(grid_sup)},
                         {"grid_tolerance", format_double(grid_tol)}});
    };
  });

  auto* u_hur = u_cmd->add_subcommand("hurwitz", "scan with the Hurwitz zeta function");
  double alpha = 0.5;
  add_scan_opts(u_hur);
  u_hur->add_option("--alpha", alpha)->required();
  u_hur->add_option("--tau-max", tau_max);
  u_hur->add_option("--step", tau_step);
  u_hur->add_flag("--no-polish", no_polish);
  u_hur->callback([&] {
    action = [&] {
      const auto base = alpha == 1.0 ? BaseFunction::zeta() : BaseFunction::hurwitz(alpha);
      const auto box = parse_box(box_text, grid_c, grid_t);
      const auto r = hurwitz_scan(parse_target(target_text, base, box, opts()), alpha, box, tau_max, tau_step,
                                  parse_list(eps_text), scan_opts());
      emit_scan(g, csv_path, r);
    };
  });

  auto* u_tay = u_cmd->add_subcommand("taylor", "translates of Taylor polynomials of zeta");
  std::string z0_text = "0.4+0.1i";
  int degree = 10;
  add_scan_opts(u_tay);
  u_tay->add_option("--z0", z0_text);
  u_tay->add_option("--n", degree);
  u_tay->add_option("--tau-max", tau_max);
  u_tay->add_option("--step", tau_step);
  u_tay->callback([&] {
    action = [&] {
      const auto base = BaseFunction::zeta();
      const auto box = parse_box(box_text, grid_c, grid_t);
      const auto r = taylor_translate_scan(parse_target(target_text, base, box, opts()), box,
                                           parse_complex(z0_text), degree, tau_max, tau_step, parse_list(eps_text),
                                           scan_opts());
      emit_scan(g, csv_path, r);
    };
  });

  auto* u_ap = u_cmd->add_subcommand("almost-period", "epsilon-translation numbers per window");
  std::string strip_text = "1.5:2";
  double y_window = 1.0, eps = 0.1, ell = 1e4, range = 1e4, ap_step = 0.05;
  u_ap->add_option("--base", base_text);
  u_ap->add_option("--strip", strip_text, "alpha:beta");
  u_ap->add_option("--y", y_window);
  u_ap->add_option("--eps", eps);
  u_ap->add_option("--ell", ell);
  u_ap->add_option("--range", range);
  u_ap->add_option("--step", ap_step);
  u_ap->callback([&] {
    action = [&] {
      const auto st = split_colon(strip_text, 2, "strip");
      AlmostPeriodOptions ao;
      ao.range = range;
      ao.tau_step = ap_step;
      ao.scan.eval = opts();
      const auto r = almost_period_scan(parse_base(base_text), st[0], st[1], y_window, eps, ell, ao);
      json windows = json::array();
      for (const auto& w : r.windows) {
        json finds = json::array();
        for (double t : w.finds) finds.push_back(format_double(t));
        windows.push_back({{"lo", format_double(w.lo)},
                           {"hi", format_double(w.hi)},
                           {"finds", finds},
                           {"best_tau", format_double(w.best_tau)},
                           {"best_J", format_double(w.best_J)}});
      }
      write_json(g.out, {{"windows", windows},
                         {"empty_windows", r.empty_windows},
                         {"lipschitz", format_double(r.lipschitz)},
                         {"refined_cells", r.refined_cells}});
    };
  });

  auto* u_den = u_cmd->add_subcommand("density", "fraction of scanned shifts with J <= eps");
  std::string scan_path;
  u_den->add_option("--scan", scan_path, "scan JSON")->required();
  u_den->add_option("--eps", eps_text);
  u_den->callback([&] {
    action = [&] {
      std::ifstream in(scan_path);
      if (!in) throw Error(ErrorKind::ParseError, "cannot open " + scan_path);
      ScanResult r;
      try {
        const json doc = json::parse(in);
        for (const auto& v : doc.at("J")) r.J.push_back(parse_double(v.get<std::string>()));
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, scan_path + ": " + e.what());
      }
      std::vector<std::vector<double>> rows;
      for (double e : parse_list(eps_text)) rows.push_back({e, density_estimate(r, e)});
      Output out(g.out);
      write_csv(out.stream(), {"eps", "fraction"}, rows);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    if (g.workers > 0) set_worker_count(g.workers);
    if (action) action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
