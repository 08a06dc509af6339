// hfactor: factor nonsingular matrices over an indefinite inner product
// into H-normal pieces (H-unitary x neutral involution x r-positive
// H-selfadjoint), plus the supporting sign/sqrt/polar/canonical tooling.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hfactor/dense_kernel.hpp"
#include "hfactor/factorizations.hpp"
#include "hfactor/generators.hpp"
#include "hfactor/matrix_io.hpp"
#include "hfactor/sign_function.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace hfactor;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSingular = 3;
constexpr int kExitResidual = 4;

struct TolOptions {
  double eps_class = 0.0;  // 0 = auto (1e-10 * n)
  double eps_residual = 0.0;
  double eps_rank = 0.0;

  ToleranceConfig resolve(Eigen::Index n) const {
    ToleranceConfig tol = ToleranceConfig::defaults_for(n);
    if (eps_class > 0.0) tol.eps_class = eps_class;
    if (eps_residual > 0.0) tol.eps_residual = eps_residual;
    if (eps_rank > 0.0) tol.eps_rank = eps_rank;
    tol.validate();
    return tol;
  }
};

void add_tol_options(CLI::App* cmd, TolOptions& opts) {
  cmd->add_option("--eps-class", opts.eps_class,
                  "eigenvalue classification threshold (default 1e-10*n)")
      ->envname("HFACTOR_EPS_CLASS");
  cmd->add_option("--eps-residual", opts.eps_residual,
                  "acceptance threshold for invariant residuals "
                  "(default 1e-9)")
      ->envname("HFACTOR_EPS_RESIDUAL");
  cmd->add_option("--eps-rank", opts.eps_rank,
                  "degeneracy threshold for Gram matrices (default 1e-10)")
      ->envname("HFACTOR_EPS_RANK");
}

ordered_json tol_json(const ToleranceConfig& tol) {
  ordered_json j;
  j["eps_class"] = tol.eps_class;
  j["eps_residual"] = tol.eps_residual;
  j["eps_rank"] = tol.eps_rank;
  return j;
}

ordered_json residuals_json(const std::map<std::string, double>& residuals) {
  ordered_json j;
  for (const auto& [name, value] : residuals) j[name] = value;
  return j;
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

InnerProductSpace load_space(const fs::path& h_path,
                             const ToleranceConfig& tol) {
  const SquareMatrix h = read_matrix(h_path);
  try {
    return InnerProductSpace(h, tol);
  } catch (const SingularInput&) {
    throw ParseError("inner product matrix singular: " + h_path.string());
  }
}

FactorVariant parse_variant(const std::string& name) {
  if (name == "lxs") return FactorVariant::LXS;
  if (name == "slx") return FactorVariant::SLX;
  if (name == "sxl") return FactorVariant::SXL;
  if (name == "xls") return FactorVariant::XLS;
  throw ParseError("unknown variant '" + name + "'");
}

// Factor file names in product order for each arrangement.
std::vector<std::string> factor_names(FactorVariant v) {
  switch (v) {
    case FactorVariant::LXS:
      return {"L", "X", "S"};
    case FactorVariant::SLX:
      return {"Sprime", "L", "X"};
    case FactorVariant::SXL:
      return {"Sprime", "X", "L"};
    case FactorVariant::XLS:
      return {"X", "L", "S"};
  }
  return {};
}

ordered_json sigma_summary(const SquareMatrix& sigma) {
  const Eigen::Index n = sigma.dim();
  const double tr = sigma.trace().real();
  const int minus = static_cast<int>(
      std::lround((static_cast<double>(n) - tr) / 2.0));
  ordered_json j;
  j["dim"] = n;
  j["plus_count"] = static_cast<int>(n) - minus;
  j["minus_count"] = minus;
  j["trace"] = tr;
  j["is_identity"] = minus == 0;
  return j;
}

struct DecomposeResult {
  int exit_code = kExitOk;
  ordered_json report;
};

DecomposeResult run_decompose(const fs::path& f_path, const fs::path& h_path,
                              const fs::path& out_dir,
                              const std::string& variant_name,
                              std::uint64_t seed, const TolOptions& tol_opts) {
  const SquareMatrix f = read_matrix(f_path);
  const ToleranceConfig tol = tol_opts.resolve(f.dim());
  const InnerProductSpace space = load_space(h_path, tol);
  if (space.dim() != f.dim()) {
    throw ParseError("F and H dimensions differ");
  }
  const FactorVariant variant = parse_variant(variant_name);

  const NormalFactorization nf = factor_normal(f, space, tol, variant, seed);
  const PolarFactors polar = indefinite_polar(f, space, tol);

  fs::create_directories(out_dir);
  const std::vector<std::string> names = factor_names(variant);
  for (std::size_t i = 0; i < 3; ++i) {
    write_matrix(out_dir / (names[i] + ".json"), nf.factors[i]);
  }

  const bool ok = nf.within(tol.eps_residual);
  ordered_json rep;
  rep["tool"] = "hfactor";
  rep["command"] = "decompose";
  rep["variant"] = variant_name;
  rep["input"] = f_path.string();
  rep["n"] = f.dim();
  rep["field"] = f.is_real() ? "real" : "complex";
  rep["inertia"] = {{"p", space.positive_count()},
                    {"q", space.negative_count()}};
  rep["neutral_index"] = nf.neutral_index;
  rep["tolerances"] = tol_json(tol);
  rep["factors"] = names;
  rep["residuals"] = residuals_json(nf.certificates);
  rep["sigma"] = sigma_summary(polar.sigma);
  rep["condition_numbers"] = {
      {"kappa_s", detail::condition_number(polar.s.values())},
      {"kappa_s_prime", detail::condition_number(polar.s_prime.values())},
      {"kappa_w", detail::condition_number(polar.w.values())}};
  // Existence of the classical generalized polar form is decided in the
  // literature by the spectrum of F^{[H]}F; this pipeline always factors,
  // and the flag records when the classical form also exists (no negative
  // real eigenvalues).
  rep["generalized_polar_exists"] = polar.sigma.values().isIdentity(0.0);
  rep["status"] = ok ? "ok" : "residual_failure";

  write_json(out_dir / "report.json", rep);
  return {ok ? kExitOk : kExitResidual, rep};
}

int cmd_decompose(const fs::path& f_path, const fs::path& h_path,
                  const fs::path& out_dir, const std::string& variant_name,
                  std::uint64_t seed, const TolOptions& tol_opts) {
  const DecomposeResult res = run_decompose(f_path, h_path, out_dir,
                                            variant_name, seed, tol_opts);
  std::cout << res.report.dump(2) << "\n";
  return res.exit_code;
}

int cmd_batch_decompose(const fs::path& batch_dir,
                        const std::string& variant_name, std::uint64_t seed,
                        const TolOptions& tol_opts, int jobs) {
  // Each subdirectory holding F.* and H.* is an independent problem.
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(batch_dir)) {
    if (!entry.is_directory()) continue;
    for (const char* stem : {"F.json", "F.mtx"}) {
      if (fs::exists(entry.path() / stem)) {
        dirs.push_back(entry.path());
        break;
      }
    }
  }
  std::sort(dirs.begin(), dirs.end());

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{kExitOk};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= dirs.size()) return;
      const fs::path& dir = dirs[i];
      const fs::path h_path =
          fs::exists(dir / "H.json") ? dir / "H.json" : dir / "H.mtx";
      const fs::path f_path =
          fs::exists(dir / "F.json") ? dir / "F.json" : dir / "F.mtx";
      int code = kExitOk;
      try {
        code = run_decompose(f_path, h_path, dir, variant_name, seed,
                             tol_opts)
                   .exit_code;
      } catch (const ParseError& e) {
        std::cerr << dir.string() << ": " << e.what() << "\n";
        code = kExitParse;
      } catch (const SingularInput& e) {
        std::cerr << dir.string() << ": " << e.what() << "\n";
        code = kExitSingular;
      } catch (const Error& e) {
        std::cerr << dir.string() << ": " << e.what() << "\n";
        code = kExitResidual;
      }
      int cur = worst.load();
      while (code > cur && !worst.compare_exchange_weak(cur, code)) {
      }
    }
  };
  std::vector<std::thread> pool;
  const int thread_count = std::max(1, jobs);
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::cout << "processed " << dirs.size() << " problems\n";
  return worst.load();
}

int cmd_polar(const fs::path& f_path, const fs::path& h_path,
              const fs::path& out_dir, const TolOptions& tol_opts) {
  const SquareMatrix f = read_matrix(f_path);
  const ToleranceConfig tol = tol_opts.resolve(f.dim());
  const InnerProductSpace space = load_space(h_path, tol);
  const PolarFactors polar = indefinite_polar(f, space, tol);

  fs::create_directories(out_dir);
  write_matrix(out_dir / "W.json", polar.w);
  write_matrix(out_dir / "S.json", polar.s);
  write_matrix(out_dir / "Sprime.json", polar.s_prime);
  write_matrix(out_dir / "Sigma.json", polar.sigma);
  write_matrix(out_dir / "SigmaPrime.json", polar.sigma_prime);

  const bool ok = polar.within(tol.eps_residual);
  ordered_json rep;
  rep["tool"] = "hfactor";
  rep["command"] = "polar";
  rep["input"] = f_path.string();
  rep["n"] = f.dim();
  rep["field"] = f.is_real() ? "real" : "complex";
  rep["inertia"] = {{"p", space.positive_count()},
                    {"q", space.negative_count()}};
  rep["tolerances"] = tol_json(tol);
  rep["residuals"] = residuals_json(polar.residuals);
  rep["sigma"] = sigma_summary(polar.sigma);
  rep["condition_numbers"] = {
      {"kappa_s", detail::condition_number(polar.s.values())},
      {"kappa_s_prime", detail::condition_number(polar.s_prime.values())}};
  rep["status"] = ok ? "ok" : "residual_failure";
  write_json(out_dir / "report.json", rep);
  std::cout << rep.dump(2) << "\n";
  return ok ? kExitOk : kExitResidual;
}

int cmd_matrix_function(const std::string& command, const fs::path& in_path,
                        const fs::path& out_path, const TolOptions& tol_opts) {
  const SquareMatrix a = read_matrix(in_path);
  const ToleranceConfig tol = tol_opts.resolve(a.dim());
  const SquareMatrix result =
      command == "sign" ? sign_matrix(a, tol) : principal_sqrt(a, tol);
  write_matrix(out_path, result);

  ordered_json rep;
  rep["tool"] = "hfactor";
  rep["command"] = command;
  rep["input"] = in_path.string();
  rep["output"] = out_path.string();
  rep["n"] = a.dim();
  rep["field"] = a.is_real() ? "real" : "complex";
  rep["tolerances"] = tol_json(tol);
  if (command == "sign") {
    rep["sigma"] = sigma_summary(result);
    const double inv_res =
        (result.values() * result.values() -
         ComplexMatrix::Identity(a.dim(), a.dim()))
            .norm() /
        std::max(1.0, result.norm());
    rep["residuals"] = {{"involution", inv_res}};
  } else {
    const double sq_res =
        (result.values() * result.values() - a.values()).norm() / a.norm();
    rep["residuals"] = {{"square", sq_res}};
  }
  rep["status"] = "ok";
  std::cout << rep.dump(2) << "\n";
  return kExitOk;
}

int cmd_canonical(const fs::path& x_path, const fs::path& h_path,
                  const fs::path& out_dir, const std::string& layout_name,
                  const TolOptions& tol_opts) {
  const SquareMatrix x = read_matrix(x_path);
  const ToleranceConfig tol = tol_opts.resolve(x.dim());
  const InnerProductSpace space = load_space(h_path, tol);

  CanonicalLayout layout;
  std::pair<std::string, std::string> names;
  if (layout_name == "jk") {
    layout = CanonicalLayout::JK;
    names = {"J", "K"};
  } else if (layout_name == "pm") {
    layout = CanonicalLayout::PM;
    names = {"P", "M"};
  } else if (layout_name == "jk-planes") {
    layout = CanonicalLayout::JKPlanes;
    names = {"J", "K"};
  } else if (layout_name == "pm-planes") {
    layout = CanonicalLayout::PMPlanes;
    names = {"P", "M"};
  } else {
    throw ParseError("unknown layout '" + layout_name + "'");
  }

  const NeutralInvolution inv = certify(x, space, tol);
  const CanonicalPair cp = canonical_pair(inv, space, tol, layout);

  fs::create_directories(out_dir);
  write_matrix(out_dir / "Q.json", cp.transform);
  write_matrix(out_dir / (names.first + ".json"), cp.first);
  write_matrix(out_dir / (names.second + ".json"), cp.second);

  ordered_json rep;
  rep["tool"] = "hfactor";
  rep["command"] = "canonical";
  rep["layout"] = layout_name;
  rep["n"] = x.dim();
  rep["field"] = x.is_real() ? "real" : "complex";
  rep["inertia"] = {{"p", space.positive_count()},
                    {"q", space.negative_count()}};
  rep["neutral_index"] = inv.neutral_index;
  rep["tolerances"] = tol_json(tol);
  std::map<std::string, double> all = inv.residuals;
  all.insert(cp.residuals.begin(), cp.residuals.end());
  rep["residuals"] = residuals_json(all);
  rep["condition_numbers"] = {{"kappa_q", cp.kappa_q}};
  rep["status"] = "ok";
  write_json(out_dir / "report.json", rep);
  std::cout << rep.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const fs::path& f_path, const fs::path& h_path,
               const fs::path& factors_dir, const std::string& variant_name,
               const TolOptions& tol_opts) {
  const SquareMatrix f = read_matrix(f_path);
  const ToleranceConfig tol = tol_opts.resolve(f.dim());
  const InnerProductSpace space = load_space(h_path, tol);
  const FactorVariant variant = parse_variant(variant_name);

  const std::vector<std::string> names = factor_names(variant);
  std::vector<SquareMatrix> factors;
  factors.reserve(3);
  for (const std::string& name : names) {
    factors.push_back(read_matrix(factors_dir / (name + ".json")));
  }

  std::map<std::string, double> residuals;
  const ComplexMatrix product =
      factors[0].values() * factors[1].values() * factors[2].values();
  residuals["reconstruction"] = rel_residual(product - f.values(), f.norm());

  auto factor_by_name = [&](const std::string& want) -> const SquareMatrix& {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == want) return factors[i];
    }
    throw Error("variant lacks factor " + want);
  };
  const SquareMatrix& l = factor_by_name("L");
  const SquareMatrix& x = factor_by_name("X");
  const bool uses_right_s =
      variant == FactorVariant::LXS || variant == FactorVariant::XLS;
  const SquareMatrix& s = factor_by_name(uses_right_s ? "S" : "Sprime");

  residuals["l_h_unitary"] = is_h_unitary(l, space, tol).residual;
  residuals["s_h_selfadjoint"] = is_h_selfadjoint(s, space, tol).residual;
  residuals["s_r_positive_margin"] =
      detail::min_spectrum_real_part(s) > 0 ? 0.0 : 1.0;
  int neutral_index = -1;
  try {
    const NeutralInvolution inv = certify(x, space, tol);
    neutral_index = inv.neutral_index;
    for (const auto& [name, r] : inv.residuals) residuals["x_" + name] = r;
  } catch (const CertificationError& e) {
    residuals["x_" + e.identity] = e.residual;
  }

  bool ok = neutral_index >= 0;
  for (const auto& [name, r] : residuals) ok = ok && r <= tol.eps_residual;

  ordered_json rep;
  rep["tool"] = "hfactor";
  rep["command"] = "verify";
  rep["variant"] = variant_name;
  rep["n"] = f.dim();
  rep["field"] = f.is_real() ? "real" : "complex";
  rep["inertia"] = {{"p", space.positive_count()},
                    {"q", space.negative_count()}};
  rep["neutral_index"] = neutral_index;
  rep["tolerances"] = tol_json(tol);
  rep["residuals"] = residuals_json(residuals);
  rep["status"] = ok ? "ok" : "residual_failure";
  std::cout << rep.dump(2) << "\n";
  return ok ? kExitOk : kExitResidual;
}

int cmd_gen(Eigen::Index n, int p, int m, std::uint64_t seed,
            const std::string& field_name, const std::string& kind,
            const fs::path& out_dir, const TolOptions& tol_opts) {
  Field field;
  if (field_name == "real") {
    field = Field::Real;
  } else if (field_name == "complex") {
    field = Field::Complex;
  } else {
    throw ParseError("unknown field '" + field_name + "'");
  }
  const ToleranceConfig tol = tol_opts.resolve(n);
  fs::create_directories(out_dir);

  ordered_json manifest;
  manifest["tool"] = "hfactor";
  manifest["command"] = "gen";
  manifest["kind"] = kind;
  manifest["n"] = n;
  manifest["p"] = p;
  manifest["m"] = m;
  manifest["seed"] = seed;
  manifest["field"] = field_name;

  if (kind == "space") {
    const InnerProductSpace space = gen_space(n, p, seed, field, &tol);
    write_matrix(out_dir / "H.json", space.h());
    manifest["files"] = {"H.json"};
  } else if (kind == "involution") {
    const GeneratedInvolution gen =
        gen_neutral_involution(n, p, m, seed, field, &tol);
    write_matrix(out_dir / "H.json", gen.space.h());
    write_matrix(out_dir / "X.json", gen.involution.x);
    manifest["files"] = {"H.json", "X.json"};
  } else if (kind == "matrix") {
    const InnerProductSpace space = gen_space(n, p, seed, field, &tol);
    const SquareMatrix f = gen_nonsingular_with_sigma(space, m, seed, tol);
    write_matrix(out_dir / "H.json", space.h());
    write_matrix(out_dir / "F.json", f);
    manifest["files"] = {"H.json", "F.json"};
  } else {
    throw ParseError("unknown kind '" + kind + "'");
  }
  write_json(out_dir / "gen.json", manifest);
  std::cout << manifest.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization of nonsingular matrices into H-normal factors "
               "over an indefinite inner product"};
  app.require_subcommand(1);

  TolOptions tol_opts;

  // decompose
  auto* decompose = app.add_subcommand(
      "decompose", "factor F into the L/X/S arrangement of choice");
  std::string f_path, h_path, out_dir = "hfactor_out", variant = "lxs";
  std::string batch_dir;
  std::uint64_t seed = 0;
  int jobs = 1;
  decompose->add_option("--F", f_path, "matrix F (.json or .mtx)");
  decompose->add_option("--H", h_path, "inner product matrix H");
  decompose->add_option("--out", out_dir, "output directory");
  decompose->add_option("--variant", variant, "lxs | slx | sxl | xls");
  decompose->add_option("--seed", seed, "seed for the involution orbit");
  decompose->add_option("--batch", batch_dir,
                        "directory of problem subdirectories (F.*, H.*)");
  decompose->add_option("--jobs", jobs, "concurrent problems in batch mode");
  add_tol_options(decompose, tol_opts);

  // polar
  auto* polar = app.add_subcommand("polar",
                                   "unique indefinite polar F = WS = S'W");
  std::string pf_path, ph_path, pout = "hfactor_out";
  polar->add_option("--F", pf_path, "matrix F")->required();
  polar->add_option("--H", ph_path, "inner product matrix H")->required();
  polar->add_option("--out", pout, "output directory");
  add_tol_options(polar, tol_opts);

  // sign / sqrt
  auto* sign = app.add_subcommand("sign", "matrix sign (negative-real "
                                          "spectrum to -1, rest to +1)");
  std::string sin_path, sout_path = "sign.json";
  sign->add_option("--input", sin_path, "input matrix")->required();
  sign->add_option("--output", sout_path, "output matrix file");
  add_tol_options(sign, tol_opts);

  auto* sqrt_cmd = app.add_subcommand("sqrt", "principal matrix square root");
  std::string qin_path, qout_path = "sqrt.json";
  sqrt_cmd->add_option("--input", qin_path, "input matrix")->required();
  sqrt_cmd->add_option("--output", qout_path, "output matrix file");
  add_tol_options(sqrt_cmd, tol_opts);

  // canonical
  auto* canonical = app.add_subcommand(
      "canonical", "canonical pair of a neutral involution and H");
  std::string cx_path, ch_path, cout_dir = "hfactor_out", layout = "jk";
  canonical->add_option("--X", cx_path, "involution X")->required();
  canonical->add_option("--H", ch_path, "inner product matrix H")->required();
  canonical->add_option("--out", cout_dir, "output directory");
  canonical->add_option("--layout", layout, "jk | pm | jk-planes | pm-planes");
  add_tol_options(canonical, tol_opts);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "re-check a factor set against F and H");
  std::string vf_path, vh_path, vdir = "hfactor_out", vvariant = "lxs";
  verify->add_option("--F", vf_path, "matrix F")->required();
  verify->add_option("--H", vh_path, "inner product matrix H")->required();
  verify->add_option("--factors", vdir, "directory with the factor files");
  verify->add_option("--variant", vvariant, "lxs | slx | sxl | xls");
  add_tol_options(verify, tol_opts);

  // gen
  auto* gen = app.add_subcommand("gen", "reproducible fixture generator");
  Eigen::Index gn = 4;
  int gp = 2, gm = 0;
  std::uint64_t gseed = 0;
  std::string gfield = "real", gkind = "matrix", gout = "hfactor_out";
  gen->add_option("--n", gn, "dimension")->required();
  gen->add_option("--p", gp, "positive inertia count")->required();
  gen->add_option("--m", gm, "neutral index");
  gen->add_option("--seed", gseed, "64-bit seed");
  gen->add_option("--field", gfield, "real | complex");
  gen->add_option("--kind", gkind, "matrix | space | involution");
  gen->add_option("--out", gout, "output directory");
  add_tol_options(gen, tol_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (decompose->parsed()) {
      if (!batch_dir.empty()) {
        return cmd_batch_decompose(batch_dir, variant, seed, tol_opts, jobs);
      }
      if (f_path.empty() || h_path.empty()) {
        throw ParseError("decompose requires --F and --H (or --batch)");
      }
      return cmd_decompose(f_path, h_path, out_dir, variant, seed, tol_opts);
    }
    if (polar->parsed()) return cmd_polar(pf_path, ph_path, pout, tol_opts);
    if (sign->parsed()) {
      return cmd_matrix_function("sign", sin_path, sout_path, tol_opts);
    }
    if (sqrt_cmd->parsed()) {
      return cmd_matrix_function("sqrt", qin_path, qout_path, tol_opts);
    }
    if (canonical->parsed()) {
      return cmd_canonical(cx_path, ch_path, cout_dir, layout, tol_opts);
    }
    if (verify->parsed()) {
      return cmd_verify(vf_path, vh_path, vdir, vvariant, tol_opts);
    }
    if (gen->parsed()) {
      return cmd_gen(gn, gp, gm, gseed, gfield, gkind, gout, tol_opts);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SingularInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const NegativeRealEigenvalue& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const IndexTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CertificationError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.residual
              << ")\n";
    return kExitResidual;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResidual;
  }
  return kExitOk;
}
