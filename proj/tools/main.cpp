// Command-line front end: one subcommand per library capability, JSON reports
// by default, CSV for tabular data. Exit codes: 0 success/certified,
// 1 computational failure (inadmissible, uncertified, non-converged),
// 2 input/parse error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hyperpack/complex.hpp"
#include "hyperpack/curvature.hpp"
#include "hyperpack/errors.hpp"
#include "hyperpack/sampling.hpp"
#include "hyperpack/solver.hpp"
#include "hyperpack/trunctet.hpp"
#include "hyperpack/verify.hpp"

namespace {

using hyperpack::MetricState;
using hyperpack::Triangulation;
using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitComputation = 1;
constexpr int kExitInput = 2;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw hyperpack::ParseError("cannot read file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw hyperpack::ParseError("cannot write output file: " + out_path);
  }
  out << text;
}

// A triangulation argument names either a JSON file or a bundled builtin
// ("double4", "fan6", "self_glued").
std::shared_ptr<const Triangulation> load_triangulation(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    return std::make_shared<Triangulation>(hyperpack::parse_triangulation(read_file(arg)));
  }
  try {
    return std::make_shared<Triangulation>(
        hyperpack::parse_triangulation(hyperpack::builtin_triangulation(arg)));
  } catch (const hyperpack::UnknownId&) {
    throw hyperpack::ParseError("no such file or builtin triangulation: " + arg);
  }
}

// Real-vector files: a bare JSON array, or an object carrying the array under
// `key` (weights_radians / radii / target).
std::vector<double> load_reals(const std::string& path, const char* key) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& err) {
    throw hyperpack::ParseError("invalid JSON in " + path + ": " + err.what());
  }
  const json* arr = nullptr;
  if (doc.is_array()) {
    arr = &doc;
  } else if (doc.is_object() && doc.contains(key) && doc[key].is_array()) {
    arr = &doc[key];
  } else {
    throw hyperpack::ParseError(path + " must be a JSON array of reals or carry key '" +
                                key + "'");
  }
  std::vector<double> out;
  for (const json& x : *arr) {
    if (!x.is_number()) {
      throw hyperpack::ParseError(path + " holds a non-numeric entry");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

struct CommonPaths {
  std::string triangulation;
  std::string weights;
  std::string radii;
  std::string out;
  bool csv = false;
};

MetricState load_state(const CommonPaths& p) {
  auto tri = load_triangulation(p.triangulation);
  return hyperpack::make_state(tri, load_reals(p.weights, "weights_radians"),
                               load_reals(p.radii, "radii"));
}

int run_validate(const CommonPaths& p) {
  const auto tri = load_triangulation(p.triangulation);
  const hyperpack::ValidationReport rep = validate_triangulation(*tri);
  json doc;
  doc["valid"] = true;
  doc["vertex_count"] = tri->vertex_count;
  doc["edge_count"] = tri->edges.size();
  doc["tet_count"] = tri->tets.size();
  doc["edge_star_sizes"] = rep.edge_star_sizes;
  doc["vertex_degrees"] = rep.vertex_degrees;
  doc["allow_self_gluing"] = tri->allow_self_gluing;
  emit(doc.dump(2) + "\n", p.out);
  return kExitSuccess;
}

int run_lengths(const CommonPaths& p) {
  const MetricState st = load_state(p);
  bool all_exist = true;
  for (bool ok : st.lengths_ok) all_exist = all_exist && ok;
  if (p.csv) {
    std::ostringstream csv;
    csv << "edge,v,w,weight_radians,length,exists\n";
    for (std::size_t e = 0; e < st.lengths.size(); ++e) {
      csv << e << "," << st.tri->edges[e].v << "," << st.tri->edges[e].w << ","
          << fmt17(st.weights[e]) << "," << fmt17(st.lengths[e]) << ","
          << (st.lengths_ok[e] ? "true" : "false") << "\n";
    }
    emit(csv.str(), p.out);
  } else {
    json doc;
    doc["lengths"] = st.lengths;
    doc["exists"] = st.lengths_ok;
    doc["all_exist"] = all_exist;
    doc["admissible"] = st.admissible;
    emit(doc.dump(2) + "\n", p.out);
  }
  return all_exist ? kExitSuccess : kExitComputation;
}

int run_check(const CommonPaths& p) {
  const MetricState st = load_state(p);
  std::vector<int> pattern_tets;
  for (std::size_t tid = 0; tid < st.tri->tets.size(); ++tid) {
    if (st.tet_weights(static_cast<int>(tid)).always_degenerate_pattern()) {
      pattern_tets.push_back(static_cast<int>(tid));
    }
  }
  json doc;
  doc["admissible"] = st.admissible;
  doc["rigidity_tier"] = st.rigidity_tier;
  doc["lengths_exist"] = st.lengths_ok;
  doc["tet_nondegenerate"] = st.tet_nondegenerate;
  doc["inadmissible_tets"] = inadmissible_tets(st);
  doc["always_degenerate"] = !pattern_tets.empty();
  doc["always_degenerate_tets"] = pattern_tets;
  emit(doc.dump(2) + "\n", p.out);
  return kExitSuccess;
}

int run_curvature(const CommonPaths& p) {
  const MetricState st = load_state(p);
  const hyperpack::CurvatureReport rep = curvature_report(st);
  if (p.csv) {
    std::ostringstream csv;
    csv << "kind,id,value\n";
    for (std::size_t e = 0; e < rep.edge_ricci.size(); ++e) {
      csv << "edge," << e << "," << fmt17(rep.edge_ricci[e]) << "\n";
    }
    for (std::size_t v = 0; v < rep.vertex_scalar.size(); ++v) {
      csv << "vertex," << v << "," << fmt17(rep.vertex_scalar[v]) << "\n";
    }
    emit(csv.str(), p.out);
    return kExitSuccess;
  }
  json doc;
  doc["edge_ricci"] = rep.edge_ricci;
  doc["vertex_scalar"] = rep.vertex_scalar;
  if (st.tri->vertex_link_euler) {
    // Boundary Gauss-Bonnet: scalar curvature must equal 2 pi chi(link) plus
    // the total area of the vertex triangles at that vertex.
    const auto& chi = *st.tri->vertex_link_euler;
    std::vector<double> expected(st.tri->vertex_count, 0.0);
    for (int v = 0; v < st.tri->vertex_count; ++v) {
      expected[v] = 2.0 * std::numbers::pi * chi[v];
    }
    for (std::size_t tid = 0; tid < st.tri->tets.size(); ++tid) {
      const auto beta = hyperpack::dihedral_angles(st.tet_lengths(static_cast<int>(tid)));
      for (int corner = 0; corner < 4; ++corner) {
        double angle_sum = 0.0;
        for (int other = 0; other < 4; ++other) {
          if (other != corner) {
            angle_sum += beta[hyperpack::slot_index(corner, other)];
          }
        }
        expected[st.tri->tets[tid].vertices[corner]] += std::numbers::pi - angle_sum;
      }
    }
    double residual = 0.0;
    for (int v = 0; v < st.tri->vertex_count; ++v) {
      residual = std::max(residual, std::abs(expected[v] - rep.vertex_scalar[v]));
    }
    json link;
    link["expected"] = expected;
    link["max_residual"] = residual;
    doc["link_gauss_bonnet"] = link;
  }
  emit(doc.dump(2) + "\n", p.out);
  return kExitSuccess;
}

int run_hessian(const CommonPaths& p) {
  const MetricState st = load_state(p);
  const Eigen::MatrixXd h = hess_G(st);
  if (p.csv) {
    std::ostringstream csv;
    csv << "row,col,value\n";
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        csv << i << "," << j << "," << fmt17(h(i, j)) << "\n";
      }
    }
    emit(csv.str(), p.out);
    return kExitSuccess;
  }
  json rows = json::array();
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < h.cols(); ++j) row.push_back(h(i, j));
    rows.push_back(row);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  json doc;
  doc["matrix"] = rows;
  doc["eigenvalues"] = std::vector<double>(
      eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  doc["lambda_min"] = eig.eigenvalues().minCoeff();
  doc["lambda_max"] = eig.eigenvalues().maxCoeff();
  emit(doc.dump(2) + "\n", p.out);
  return kExitSuccess;
}

int run_certify(const CommonPaths& p, const std::string& mode_name, double tol) {
  const MetricState st = load_state(p);
  const hyperpack::CertificateMode mode = mode_name == "ricci"
                                              ? hyperpack::CertificateMode::ricci
                                              : hyperpack::CertificateMode::scalar;
  json doc;
  doc["mode"] = mode_name;
  try {
    const hyperpack::Certificate cert = rigidity_certificate(st, mode, tol);
    doc["weight_tier_ok"] = cert.weight_tier_ok;
    doc["curvature_sign_ok"] = cert.curvature_sign_ok;
    doc["violating_edges"] = cert.violating_edges;
    doc["lambda_min"] = cert.lambda_min;
    doc["lambda_max"] = cert.lambda_max;
    doc["tolerance"] = cert.tolerance;
    doc["certified"] = cert.certified;
    emit(doc.dump(2) + "\n", p.out);
    return cert.certified ? kExitSuccess : kExitComputation;
  } catch (const hyperpack::HypothesisFailed& err) {
    doc["certified"] = false;
    doc["hypothesis_failed"] = err.what();
    doc["violating_edges"] = err.violating_edges;
    emit(doc.dump(2) + "\n", p.out);
    return kExitComputation;
  }
}

int run_solve(const CommonPaths& p, const std::string& target_path, double tol,
              int max_iterations) {
  const MetricState st = load_state(p);
  const std::vector<double> target = load_reals(target_path, "target");
  hyperpack::SolveOptions opts;
  if (tol > 0.0) opts.residual_tol = tol;
  if (max_iterations > 0) opts.max_iterations = max_iterations;
  const hyperpack::SolveResult res = solve_prescribed_scalar(st, target, opts);
  json doc;
  doc["radii"] = res.radii;
  doc["iterations"] = res.iterations;
  doc["residual_history"] = res.residual_history;
  doc["termination"] = termination_name(res.termination);
  doc["hypothesis_maintained"] = res.hypothesis_maintained;
  doc["converged"] = res.termination == hyperpack::Termination::converged;
  emit(doc.dump(2) + "\n", p.out);
  return res.termination == hyperpack::Termination::converged ? kExitSuccess
                                                              : kExitComputation;
}

int run_sample(const std::string& weights_path, int apex, std::uint64_t seed,
               int samples, const std::string& out_path, bool csv) {
  const std::vector<double> angles = load_reals(weights_path, "weights_radians");
  if (angles.size() != 6) {
    throw hyperpack::ParseError("sample needs exactly 6 weight angles, got " +
                                std::to_string(angles.size()));
  }
  std::array<double, 6> phi{};
  std::copy(angles.begin(), angles.end(), phi.begin());
  const hyperpack::TetWeights w = hyperpack::TetWeights::from_angles(phi);
  if (apex < 0 || apex > 3) {
    throw hyperpack::ParseError("apex must be 0..3");
  }
  hyperpack::Sampler sampler(seed);
  std::vector<std::array<double, 4>> points;  // t of the three others + threshold
  for (int i = 0; i < samples; ++i) {
    const hyperpack::TetRadii r = sampler.radii();
    const auto tau = v_threshold(apex, r, w);
    if (!tau) continue;
    std::array<double, 4> row{};
    const auto t = r.t();
    int idx = 0;
    for (int nu = 0; nu < 4; ++nu) {
      if (nu != apex) row[idx++] = t[nu];
    }
    row[3] = *tau;
    points.push_back(row);
  }
  if (csv) {
    std::ostringstream out;
    out << "t_other_0,t_other_1,t_other_2,tau_star\n";
    for (const auto& row : points) {
      out << fmt17(row[0]) << "," << fmt17(row[1]) << "," << fmt17(row[2]) << ","
          << fmt17(row[3]) << "\n";
    }
    emit(out.str(), out_path);
    return kExitSuccess;
  }
  json doc;
  doc["apex"] = apex;
  doc["samples"] = samples;
  doc["count"] = points.size();
  json rows = json::array();
  for (const auto& row : points) {
    json item;
    item["t_others"] = {row[0], row[1], row[2]};
    item["tau_star"] = row[3];
    rows.push_back(item);
  }
  doc["points"] = rows;
  emit(doc.dump(2) + "\n", out_path);
  return kExitSuccess;
}

int run_volume(const CommonPaths& p, const std::string& reference_path) {
  const auto tri = load_triangulation(p.triangulation);
  const std::vector<double> weights = load_reals(p.weights, "weights_radians");
  const MetricState main_state =
      hyperpack::make_state(tri, weights, load_reals(p.radii, "radii"));
  const MetricState ref_state =
      hyperpack::make_state(tri, weights, load_reals(reference_path, "radii"));
  for (const MetricState* st : {&main_state, &ref_state}) {
    if (!st->admissible) {
      throw hyperpack::InadmissibleState("volume needs two admissible states",
                                         inadmissible_tets(*st));
    }
  }
  std::vector<double> per_tet;
  double total = 0.0;
  for (std::size_t tid = 0; tid < tri->tets.size(); ++tid) {
    const int t = static_cast<int>(tid);
    per_tet.push_back(
        hyperpack::relative_volume(main_state.tet_lengths(t), ref_state.tet_lengths(t)));
    total += per_tet.back();
  }
  if (p.csv) {
    std::ostringstream csv;
    csv << "tet,relative_volume\n";
    for (std::size_t tid = 0; tid < per_tet.size(); ++tid) {
      csv << tid << "," << fmt17(per_tet[tid]) << "\n";
    }
    csv << "total," << fmt17(total) << "\n";
    emit(csv.str(), p.out);
    return kExitSuccess;
  }
  json doc;
  doc["per_tet"] = per_tet;
  doc["total"] = total;
  emit(doc.dump(2) + "\n", p.out);
  return kExitSuccess;
}

int run_verify(std::uint64_t seed, int samples, const std::string& out_path, bool csv) {
  const std::vector<hyperpack::SuiteResult> results = hyperpack::run_verify_suites(seed, samples);
  const std::string text = csv ? verify_report_csv(results)
                               : verify_report_json(results, seed, samples);
  emit(text, out_path);
  for (const hyperpack::SuiteResult& r : results) {
    if (!r.pass) return kExitComputation;
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyper-ideal sphere packing toolkit: admissibility, curvature, "
               "rigidity certificates, and prescribed-curvature solving on "
               "triangulated 3-manifolds with boundary"};
  app.require_subcommand(1);

  CommonPaths paths;
  auto add_common = [&paths](CLI::App* cmd, bool needs_metric) {
    cmd->add_option("--triangulation", paths.triangulation,
                    "triangulation JSON file or builtin name")
        ->required();
    if (needs_metric) {
      cmd->add_option("--weights", paths.weights, "per-edge weight angles (radians)")
          ->required();
      cmd->add_option("--radii", paths.radii, "per-vertex radii")->required();
    }
    cmd->add_option("--out", paths.out, "write the report here instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a triangulation");
  add_common(validate, false);

  CLI::App* lengths = app.add_subcommand("lengths", "per-edge lengths for a metric state");
  add_common(lengths, true);
  lengths->add_flag("--csv", paths.csv, "emit CSV instead of JSON");

  CLI::App* check = app.add_subcommand("check", "admissibility / degeneracy report");
  add_common(check, true);

  CLI::App* curvature = app.add_subcommand("curvature", "edge Ricci and vertex scalar curvature");
  add_common(curvature, true);
  curvature->add_flag("--csv", paths.csv, "emit CSV instead of JSON");

  CLI::App* hessian = app.add_subcommand("hessian", "curvature Hessian with eigenvalues");
  add_common(hessian, true);
  hessian->add_flag("--csv", paths.csv, "emit CSV instead of JSON");

  std::string certify_mode = "scalar";
  double certify_tol = 1e-9;
  CLI::App* certify = app.add_subcommand("certify", "eigenvalue rigidity certificate");
  add_common(certify, true);
  certify->add_option("--mode", certify_mode, "scalar or ricci")
      ->check(CLI::IsMember({"scalar", "ricci"}));
  certify->add_option("--tol", certify_tol, "certification tolerance (default 1e-9)");

  std::string target_path;
  double solve_tol = 0.0;
  int solve_max_iterations = 0;
  CLI::App* solve = app.add_subcommand("solve", "prescribed scalar curvature by damped Newton");
  add_common(solve, true);
  solve->add_option("--target", target_path, "per-vertex curvature target file")->required();
  solve->add_option("--tol", solve_tol, "residual tolerance (default 1e-10)");
  solve->add_option("--max-iterations", solve_max_iterations, "iteration cap (default 50)");

  std::string sample_weights;
  int sample_apex = 0;
  std::uint64_t seed = 0;
  int samples = 10000;
  CLI::App* sample = app.add_subcommand(
      "sample", "degeneracy thresholds of one tetrahedron vertex over random radii");
  sample->add_option("--weights", sample_weights, "6 weight angles for one tetrahedron")
      ->required();
  sample->add_option("--apex", sample_apex, "local vertex 0..3")->required();
  sample->add_option("--seed", seed, "RNG seed (default 0)");
  sample->add_option("--samples", samples, "number of radius draws (default 10000)");
  sample->add_option("--out", paths.out, "write the report here instead of stdout");
  sample->add_flag("--csv", paths.csv, "emit CSV instead of JSON");

  std::string reference_path;
  CLI::App* volume = app.add_subcommand("volume", "per-tet relative volume between two radius vectors");
  add_common(volume, true);
  volume->add_option("--reference", reference_path, "reference radii file")->required();
  volume->add_flag("--csv", paths.csv, "emit CSV instead of JSON");

  CLI::App* verify = app.add_subcommand("verify", "run the seeded property suites");
  verify->add_option("--seed", seed, "RNG seed (default 0)");
  verify->add_option("--samples", samples, "sample budget per suite (default 10000)");
  verify->add_option("--out", paths.out, "write the report here instead of stdout");
  verify->add_flag("--csv", paths.csv, "emit CSV instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(paths);
    if (app.got_subcommand(lengths)) return run_lengths(paths);
    if (app.got_subcommand(check)) return run_check(paths);
    if (app.got_subcommand(curvature)) return run_curvature(paths);
    if (app.got_subcommand(hessian)) return run_hessian(paths);
    if (app.got_subcommand(certify)) return run_certify(paths, certify_mode, certify_tol);
    if (app.got_subcommand(solve))
      return run_solve(paths, target_path, solve_tol, solve_max_iterations);
    if (app.got_subcommand(sample))
      return run_sample(sample_weights, sample_apex, seed, samples, paths.out, paths.csv);
    if (app.got_subcommand(volume)) return run_volume(paths, reference_path);
    if (app.got_subcommand(verify)) return run_verify(seed, samples, paths.out, paths.csv);
    std::cerr << "no subcommand dispatched\n";
    return kExitInput;
  } catch (const hyperpack::ParseError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const hyperpack::ValidationError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const hyperpack::UnknownId& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const hyperpack::DomainError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const hyperpack::Error& err) {
    std::cerr << "computation failed: " << err.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& err) {
    std::cerr << "computation failed: " << err.what() << "\n";
    return kExitComputation;
  }
}
