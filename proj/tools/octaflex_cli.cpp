#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "octaflex/cayley_menger.hpp"
#include "octaflex/classifier.hpp"
#include "octaflex/embed_flex.hpp"
#include "octaflex/json_io.hpp"
#include "octaflex/metric_complex.hpp"
#include "octaflex/typeb.hpp"

using namespace octaflex;
using nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 2 validation, 3 search exhausted, 4 no flex, 5 no realization
constexpr int kExitValidation = 2;
constexpr int kExitSearch = 3;
constexpr int kExitNoFlex = 4;
constexpr int kExitNoRealization = 5;

std::string slurp(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;  // inline JSON
  if (arg == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(arg);
  if (!in) throw MetricParseError("cannot open " + arg);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

EdgeLengths load_metric(const std::string& arg) {
  EdgeLengths raw = metric_from_json(slurp(arg));
  auto vr = validate(raw);
  if (!vr.ok()) {
    std::cerr << "invalid metric:\n";
    for (auto& v : vr.violations) std::cerr << "  " << v.what << "\n";
    std::exit(kExitValidation);
  }
  return *vr.value;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
}

ordered_json classify_report(const EdgeLengths& l, double tol) {
  OctType ot = octahedron_type(l, tol);
  ordered_json rep;
  rep["verdict"] = verdict_name(ot.verdict);
  static const char* eq_names[3] = {"cfhg", "bpre", "sqad"};
  for (int k = 0; k < 3; ++k) {
    ordered_json e;
    auto& r = ot.equators[k];
    e["metrically_symmetric"] = r.symmetry.symmetric;
    e["symmetry_pattern"] = r.symmetry.pattern;
    e["zero_sum"] = r.zero_sum.zero_sum;
    e["zero_sum_factor"] = r.zero_sum.factor;
    e["zero_sum_residual"] = r.zero_sum.residual;
    e["class"] = ot.equators[k].cls.consistent ? class_name(r.cls.first.tag) : "Inconsistent";
    rep["equators"][eq_names[k]] = e;
  }
  rep["product_residuals"] = {{"qge=pfd", ot.product_res[0]},
                              {"bhq=cdr", ot.product_res[1]},
                              {"rga=sfb", ot.product_res[2]},
                              {"ahp=ces", ot.product_res[3]}};
  rep["b_values"] = ot.b_values;
  rep["b_scale"] = ot.b_scale;
  rep["typea_conditions"] = ot.typea_conditions;
  rep["typeb_conditions"] = ot.typeb_conditions;
  return rep;
}

int cmd_classify(const std::string& input, double tol, const std::string& out) {
  EdgeLengths l = load_metric(input);
  write_out(out, classify_report(l, tol).dump(2));
  return 0;
}

int cmd_generate(GenerateConfig cfg, const std::string& out, const std::string& cert_path) {
  GenerateCertificate cert;
  EdgeLengths l;
  try {
    l = generate(cfg, &cert);
  } catch (const SearchExhausted& e) {
    std::cerr << e.what() << "\n";
    return kExitSearch;
  }
  write_out(out, metric_to_json(l));

  ordered_json cj;
  cj["verdict"] = "TypeB";
  cj["residuals"] = {{"zero_sum", cert.zero_sum_res},
                     {"qge=pfd", cert.product_res[0]},
                     {"bhq=cdr", cert.product_res[1]},
                     {"rga=sfb", cert.product_res[2]},
                     {"ahp=ces", cert.product_res[3]}};
  cj["b_values"] = cert.b_values;
  cj["b_scale"] = cert.b_scale;
  cj["seed"] = cfg.seed;
  cj["attempt"] = cert.attempt;
  if (!cert_path.empty())
    write_out(cert_path, cj.dump(2));
  else if (out != "-" && !out.empty())
    std::cout << cj.dump(2) << "\n";
  return 0;
}

int cmd_flex(const std::string& input, FlexOptions opt, const std::string& csv_path) {
  EdgeLengths l = load_metric(input);
  FlexTrace tr = flex_sweep(l, opt);
  if (!csv_path.empty()) write_out(csv_path, trace_csv(tr));

  ordered_json rep;
  rep["flexible"] = tr.flexible;
  rep["ok_samples"] = tr.ok_count;
  rep["x_interval"] = {tr.x_lo, tr.x_hi};
  rep["volume_mean"] = tr.v_mean;
  rep["volume_max_dev"] = tr.v_max_dev;
  rep["witness_residual"] = tr.witness_residual;
  if (!tr.failure.empty()) rep["failure"] = tr.failure;
  if (tr.incompatible_at >= 0) rep["incompatible_at_step"] = tr.incompatible_at;
  std::cout << rep.dump(2) << "\n";
  return tr.flexible ? 0 : kExitNoFlex;
}

int cmd_spectrum(const std::string& input) {
  EdgeLengths l = load_metric(input);
  VolumeSpectrum spec;
  try {
    spec = enumerate_embeddings(l);
  } catch (const NoRealization& e) {
    std::cerr << e.what() << "\n";
    return kExitNoRealization;
  }
  ordered_json rep;
  rep["v_squared"] = spec.v_squared;
  rep["multiplicity"] = spec.multiplicity;
  rep["count"] = spec.v_squared.size();
  rep["bound_ok"] = spec.v_squared.size() <= 8;
  std::cout << rep.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& input, double tol) {
  EdgeLengths l = load_metric(input);
  int failures = 0;
  auto report = [&](const std::string& name, bool pass, double res) {
    std::cout << (pass ? "PASS  " : "FAIL  ") << name << "  residual=" << res << "\n";
    if (!pass) failures++;
  };

  static const Vertex all[6] = {Vertex::V1, Vertex::V2, Vertex::V3,
                                Vertex::V4, Vertex::V5, Vertex::V6};
  static const char* names[6] = {"K1", "K2", "K3", "K4", "K5", "K6"};
  for (int vi = 0; vi < 6; ++vi) {
    QuadAngle K = quad_angle(l, all[vi]);
    BivariateQuad Q = q_poly(K);
    double L1 = K.lateral[0], L2 = K.lateral[1], L3 = K.lateral[2], L4 = K.lateral[3];
    double scale = K.max_sq() * K.max_sq();
    // printed coefficient spot checks of the Cayley-Menger polynomial
    double r1 = std::abs(Q.co[2][1] + 2 * (L4 * L4 + L2 * L2)) / scale;
    double r2 = std::abs(Q.co[1][2] + 2 * (L1 * L1 + L3 * L3)) / scale;
    double l42 = (L4 * L4 - L2 * L2) * (L4 * L4 - L2 * L2);
    double l13 = (L1 * L1 - L3 * L3) * (L1 * L1 - L3 * L3);
    double r3 = std::abs(Q.co[2][0] - l42) / (scale * scale);
    double r4 = std::abs(Q.co[0][2] - l13) / (scale * scale);
    double worst = std::max({r1, r2, r3, r4});
    report(std::string(names[vi]) + ": Q coefficients", worst < 1e-9, worst);

    // discriminant split at 5 nodes
    auto [P1, P2] = discriminant_factors(K);
    double worst_d = 0;
    for (int n = 0; n < 5; ++n) {
      double t = (n + 0.5) * K.max_sq();
      double A, B, C;
      Q.second_var_quadratic(t, A, B, C);
      double delta = B * B - 4 * A * C;
      double rhs = 16 * P1.eval(t) * P2.eval(t);
      double sc = std::max({std::abs(delta), std::abs(rhs), 1e-300});
      worst_d = std::max(worst_d, std::abs(delta - rhs) / sc);
    }
    report(std::string(names[vi]) + ": Delta = 16 P1 P2", worst_d < 1e-8, worst_d);

    // disc(P1) = 256 (S3 S4)^2 with Euclidean areas: 256 = 16^2 comes from
    // the 16 S^2 normalization of the three-point Cayley-Menger form
    double S1 = heron_area(L1, L2, K.base[0]);
    double S2 = heron_area(L2, L3, K.base[1]);
    double S3 = heron_area(L3, L4, K.base[2]);
    double S4 = heron_area(L4, L1, K.base[3]);
    double d1 = P1.disc(), d2 = P2.disc();
    double e1 = 256 * S3 * S3 * S4 * S4, e2 = 256 * S1 * S1 * S2 * S2;
    double rd1 = std::abs(d1 - e1) / std::max(std::abs(d1), e1);
    double rd2 = std::abs(d2 - e2) / std::max(std::abs(d2), e2);
    report(std::string(names[vi]) + ": disc(P1), disc(P2)", std::max(rd1, rd2) < 1e-8,
           std::max(rd1, rd2));

    // class assignment vs the factorization route
    AngleClass ac = angle_class(K, tol);
    FactorizationResult fr = factorize(K, tol);
    bool match = (ac.tag == ClassTag::I && fr.kind == FactorKind::Irreducible) ||
                 (ac.tag == ClassTag::IIx && fr.kind == FactorKind::SplitIIx) ||
                 (ac.tag == ClassTag::IIy && fr.kind == FactorKind::SplitIIy) ||
                 (ac.tag == ClassTag::III && fr.kind == FactorKind::SplitIII);
    report(std::string(names[vi]) + ": class " + class_name(ac.tag) + " matches factorization",
           match, fr.residual);
  }

  OctType ot = octahedron_type(l, tol);
  std::cout << "verdict: " << verdict_name(ot.verdict) << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric octahedra: classification, Type-B generation, flexing"};
  app.require_subcommand(1);

  std::string input, out, cert_path, csv_path;
  double tol = 1e-9;

  auto* classify = app.add_subcommand("classify", "Type A/B/Generic verdict with evidence");
  classify->add_option("metric", input, "metric JSON file, inline JSON, or -")->required();
  classify->add_option("--tol", tol, "residual tolerance");
  classify->add_option("-o,--out", out, "output path");

  GenerateConfig gcfg;
  std::vector<int> eps = {1, 1, 1};
  auto* generate = app.add_subcommand("generate", "search for a Type-B metric");
  generate->add_option("--seed", gcfg.seed, "RNG seed (fully determines output)");
  generate->add_option("--attempts", gcfg.attempts, "max search attempts");
  generate->add_option("--range-lo", gcfg.range_lo, "sampling range low");
  generate->add_option("--range-hi", gcfg.range_hi, "sampling range high");
  generate->add_option("--epsilon", eps, "sign triple")->expected(3);
  generate->add_option("--free-var", gcfg.free_var, "root-solved variable index (a..r = 0..5)");
  generate->add_option("--tol", gcfg.tol, "residual tolerance");
  generate->add_option("-o,--out", out, "metric output path");
  generate->add_option("--cert", cert_path, "certificate output path");

  FlexOptions fopt;
  auto* flex = app.add_subcommand("flex", "flex sweep with bellows check");
  flex->add_option("metric", input, "metric JSON file, inline JSON, or -")->required();
  flex->add_option("--steps", fopt.steps, "samples across the feasible interval");
  flex->add_option("--tol", fopt.tol, "compatibility threshold");
  flex->add_option("--csv", csv_path, "trace CSV output path");

  auto* spectrum = app.add_subcommand("spectrum", "volume spectrum over all realizations");
  spectrum->add_option("metric", input, "metric JSON file, inline JSON, or -")->required();

  auto* verify = app.add_subcommand("verify", "identity audit on one metric");
  verify->add_option("metric", input, "metric JSON file, inline JSON, or -")->required();
  verify->add_option("--tol", tol, "residual tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(input, tol, out);
    if (generate->parsed()) {
      gcfg.eps = {eps[0], eps[1], eps[2]};
      return cmd_generate(gcfg, out, cert_path);
    }
    if (flex->parsed()) return cmd_flex(input, fopt, csv_path);
    if (spectrum->parsed()) return cmd_spectrum(input);
    if (verify->parsed()) return cmd_verify(input, tol);
  } catch (const MetricParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
