#include "covjet/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "covjet/errors.hpp"
#include "covjet/fractional.hpp"
#include "covjet/manifest.hpp"

namespace covjet {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

json matrix_json(const JetMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(jet_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json table_json(const PQTable& t) {
  json levels = json::array();
  for (int k = 0; k <= t.k_max(); ++k) levels.push_back(matrix_json(t.level(k)));
  return levels;
}

json tensor_json(const TensorFieldJet& a) {
  json comps = json::object();
  for (std::size_t f = 0; f < a.size(); ++f) comps[component_key(a.multi_index(f), a.p())] = jet_to_json(a[f]);
  return comps;
}

}  // namespace

int run_compute(const std::string& manifest_path, int k, const std::string& out_path, std::ostream& err) {
  Scene s;
  try {
    s = load_manifest_file(manifest_path);
    if (!s.field) throw InvariantViolation("manifest has no 'field' block to differentiate");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_load_error;
  }
  try {
    if (k < 0) throw OrderExhausted("--k must be nonnegative");
    const PQTable p = build_table(s, SymbolKind::P, k), q = build_table(s, SymbolKind::Q, k);
    const TensorFieldJet result = covariant_derivative_k(*s.field, p, q, k);
    const TensorFieldJet oracle = iterate_covariant_oracle(*s.field, s.connection_form(), k);
    int order = result[0].order();
    bool agrees = true;
    for (std::size_t f = 0; f < result.size(); ++f) {
      order = std::min(order, result[f].order());
      const int common = std::min(result[f].order(), oracle[f].order());
      agrees = agrees && agree_through(result[f], oracle[f], common);
    }
    json out;
    out["format"] = 1;
    out["k"] = k;
    out["dimension"] = s.dim;
    out["backend"] = std::string(to_string(s.backend));
    out["base_point"] = s.base_point.str();
    out["field"] = {{"p", s.field->p()}, {"q", s.field->q()}};
    out["result"] = {{"order", order}, {"components", tensor_json(result)}};
    out["P"] = table_json(p);
    out["Q"] = table_json(q);
    out["oracle"] = {{"method", "iterated single covariant derivative"}, {"agrees", agrees}};
    write_text(out_path, out.dump(2) + "\n");
    if (!agrees) {
      err << "error: closed formula disagrees with the iterated derivative\n";
      return exit_oracle_mismatch;
    }
    return exit_ok;
  } catch (const OrderExhausted& e) {
    err << "error: order exhausted: " << e.what() << "\n";
    return exit_order_exhausted;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_load_error;
  }
}

int run_verify(const VerifyOptions& opt, const std::string& out_path, bool timing, std::ostream& err) {
  try {
    const VerifyReport r = run_verify(opt);
    write_text(out_path, report_json(r, timing).dump(2) + "\n");
    if (!r.ok()) err << r.failures.size() << " identity check(s) failed\n";
    return r.ok() ? exit_ok : exit_load_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_load_error;
  }
}

int run_solve(const std::string& system_path, std::optional<int> trunc, const std::string& out_path, std::ostream& err) {
  SystemDocument doc;
  try {
    doc = load_system(read_text(system_path), trunc);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_load_error;
  }
  try {
    const SolveResult r = solve(doc.system, doc.truncation_N, doc.grid);
    write_text(out_path, solve_result_json(doc, r).dump(2) + "\n");
    if (r.frac.diverging) {
      err << "warning: series terms are not decaying (growth factor " << r.frac.tail_ratio
          << "); the truncated sum is unreliable\n";
      return exit_diverging;
    }
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_load_error;
  }
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Covariant and fractional covariant derivatives along a curve"};
  app.require_subcommand(1);

  std::string manifest, out = "-", system;
  int k = 0;
  auto* compute = app.add_subcommand("compute", "k-th covariant derivative of the manifest's field");
  compute->add_option("--manifest", manifest, "scene manifest (JSON), - for stdin")->required();
  compute->add_option("--k", k, "derivative order")->required();
  compute->add_option("--out", out, "output file, - for stdout");

  VerifyOptions vopt;
  bool timing = false, serial = false;
  std::string vout = "-";
  auto* verify = app.add_subcommand("verify", "run randomized identity checks");
  verify->add_option("--suite", vopt.suite, "pq | covariant | fractional | all")
      ->check(CLI::IsMember({"pq", "covariant", "fractional", "all"}));
  verify->add_option("--trials", vopt.trials, "number of random scenes per suite");
  verify->add_option("--seed", vopt.seed, "base seed; trial i uses seed + i");
  verify->add_option("--dim-max", vopt.dim_max, "largest manifold dimension");
  verify->add_option("--k-max", vopt.k_max, "largest derivative order / symbol level");
  verify->add_option("--out", vout, "report file, - for stdout");
  verify->add_flag("--flat", vopt.flat, "use vanishing connections only");
  verify->add_flag("--timing", timing, "include elapsed seconds in the report");
  verify->add_flag("--serial", serial, "run trials and kernels on one thread");

  std::optional<int> trunc;
  std::string sout = "-";
  auto* solve_cmd = app.add_subcommand("solve", "solve a linear ODE system by series");
  solve_cmd->add_option("--system", system, "system document (JSON), - for stdin")->required();
  solve_cmd->add_option("--trunc", trunc, "truncation N (overrides the document)");
  solve_cmd->add_option("--out", sout, "output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*compute) return run_compute(manifest, k, out, std::cerr);
  if (*verify) {
    if (serial) vopt.exec = Exec::serial;
    return run_verify(vopt, vout, timing, std::cerr);
  }
  return run_solve(system, trunc, sout, std::cerr);
}

}  // namespace covjet
