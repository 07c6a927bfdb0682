// Command line front end: simulate | certify | p3 | synth-twin | product |
// path-scan. Results go to stdout as single-line JSON with keys in
// alphabetical order and floats rendered via format_double, so repeated runs
// are byte-identical. Exit codes: 0 success, 1 well-formed negative result
// (refusal, failed synthesis, failed composition), 2 input or usage error.
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pst/certify.hpp"
#include "pst/evolution.hpp"
#include "pst/graph.hpp"
#include "pst/io.hpp"
#include "pst/paths.hpp"
#include "pst/products.hpp"
#include "pst/spectral.hpp"
#include "pst/twin_synthesis.hpp"

using nlohmann::json;

namespace {

void dump_json(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_json(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_json(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += pst::format_double(j.get<double>());
      break;
    default:
      out += j.dump();
      break;
  }
}

int emit(const json& j, const std::string& out_path, int code) {
  std::string text;
  dump_json(j, text);
  text += '\n';
  std::fwrite(text.data(), 1, text.size(), stdout);
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out_path);
    f << text;
  }
  return code;
}

json record_json(const pst::FidelityRecord& r) {
  json j;
  j["fidelity"] = r.fidelity;
  j["source"] = r.source;
  j["target"] = r.target;
  j["time"] = r.time;
  return j;
}

json certificate_json(const pst::PSTCertificate& cert) {
  json j;
  j["status"] = cert.certified ? "certified" : "refused";
  j["refusal_reason"] = pst::to_string(cert.refusal_reason);
  if (cert.certified)
    j["transfer_time"] = cert.transfer_time;
  else
    j["transfer_time"] = nullptr;
  j["plus"] = cert.plus;
  j["minus"] = cert.minus;
  json ratios = json::array();
  for (const auto& e : cert.ratio_report.ratios) {
    json entry;
    entry["den"] = e.den;
    entry["num"] = e.num;
    entry["residual"] = e.residual;
    entry["value"] = e.value;
    ratios.push_back(entry);
  }
  j["ratios"] = ratios;
  return j;
}

json graph_fields(const pst::Graph& g, const pst::Potential& q) {
  json j;
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(json::array({a, b}));
  j["edges"] = edges;
  j["n"] = g.num_vertices();
  j["potential"] = q;
  return j;
}

struct SimulateArgs {
  std::string graph, out, trace;
  int from = 0, to = 0, samples = 0;
  std::optional<double> time, t_max;
};

int run_simulate(const SimulateArgs& a) {
  if (a.time.has_value() == a.t_max.has_value())
    throw std::invalid_argument("pass exactly one of --time and --t-max");
  if (!a.trace.empty() && !a.t_max.has_value())
    throw std::invalid_argument("--trace-out needs --t-max");

  const pst::GraphFile gf = pst::load_graph_json(a.graph);
  const auto d = pst::decompose(pst::build_hamiltonian(gf.graph, gf.potential));

  pst::FidelityRecord rec;
  if (a.time) {
    rec.time = *a.time;
    rec.source = a.from;
    rec.target = a.to;
    rec.fidelity = pst::fidelity(d, a.from, a.to, *a.time);
  } else {
    rec = a.samples > 0
              ? pst::max_fidelity(d, a.from, a.to, *a.t_max, a.samples)
              : pst::max_fidelity(d, a.from, a.to, *a.t_max);
  }
  if (!a.trace.empty()) {
    const int samples =
        a.samples > 0 ? a.samples : pst::default_samples(d, *a.t_max);
    std::ofstream f(a.trace, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open trace file " + a.trace);
    pst::write_fidelity_trace(f, d, a.from, a.to, *a.t_max, samples);
  }
  return emit(record_json(rec), a.out, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulate, certify and synthesize state transfer on graphs"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand(
      "simulate", "evaluate transfer fidelity at a time or over a window");
  sim->add_option("-g,--graph", sim_args.graph, "graph json file")->required();
  sim->add_option("--from", sim_args.from, "source vertex")->required();
  sim->add_option("--to", sim_args.to, "target vertex")->required();
  sim->add_option("--time", sim_args.time, "evaluate at this exact time");
  sim->add_option("--t-max", sim_args.t_max,
                  "search the best fidelity over [0, t-max]");
  sim->add_option("--samples", sim_args.samples,
                  "grid size for the search (default: from the spectrum)");
  sim->add_option("--trace-out", sim_args.trace,
                  "also write a t,fidelity csv over [0, t-max]");
  sim->add_option("--out", sim_args.out, "write the json result here too");

  std::string cert_graph, cert_out;
  int cert_from = 0, cert_to = 0;
  long long cert_max_den = 1000000;
  double cert_tol = 1e-9;
  auto* cert = app.add_subcommand(
      "certify", "decide perfect transfer between two vertices");
  cert->add_option("-g,--graph", cert_graph, "graph json file")->required();
  cert->add_option("--from", cert_from, "source vertex")->required();
  cert->add_option("--to", cert_to, "target vertex")->required();
  cert->add_option("--max-den", cert_max_den,
                   "largest denominator for rational reconstruction");
  cert->add_option("--tol", cert_tol, "reconstruction tolerance");
  cert->add_option("--out", cert_out, "write the json result here too");

  int p3_k = 0, p3_l = 0;
  std::string p3_out;
  auto* p3 = app.add_subcommand(
      "p3", "center potential and transfer time for the three vertex family");
  p3->add_option("--k", p3_k, "frequency index")->required();
  p3->add_option("--l", p3_l, "opposite parity index")->required();
  p3->add_option("--out", p3_out, "write the json result here too");

  std::string synth_graph, synth_out;
  int synth_from = 0, synth_to = 0, synth_seeds = 64;
  long long synth_dmax = 15;
  double synth_tol = 1e-10;
  auto* synth = app.add_subcommand(
      "synth-twin", "design a potential transferring across a twin pair");
  synth->add_option("-g,--graph", synth_graph, "graph json file")->required();
  synth->add_option("--from", synth_from, "first twin")->required();
  synth->add_option("--to", synth_to, "second twin")->required();
  synth->add_option("--d-max", synth_dmax, "initial odd denominator budget");
  synth->add_option("--seeds", synth_seeds, "number of starting seeds");
  synth->add_option("--tol", synth_tol, "ratio residual tolerance");
  synth->add_option("--out", synth_out, "write the json result here too");

  std::string prod_g1, prod_g2, prod_out;
  int prod_from1 = 0, prod_to1 = 0, prod_from2 = 0, prod_to2 = 0;
  std::optional<double> prod_t1, prod_t2;
  auto* prod = app.add_subcommand(
      "product", "compose two transfer instances on the box product");
  prod->add_option("-g,--graph", prod_g1, "first factor graph")->required();
  prod->add_option("--from", prod_from1, "source in the first factor")
      ->required();
  prod->add_option("--to", prod_to1, "target in the first factor")->required();
  prod->add_option("--time", prod_t1,
                   "transfer time of the first factor (default: certify)");
  prod->add_option("--g2", prod_g2, "second factor graph")->required();
  prod->add_option("--from2", prod_from2, "source in the second factor")
      ->required();
  prod->add_option("--to2", prod_to2, "target in the second factor")
      ->required();
  prod->add_option("--time2", prod_t2,
                   "transfer time of the second factor (default: certify)");
  prod->add_option("--out", prod_out, "write the json result here too");

  int scan_n = 0, scan_trials = 1000;
  double scan_tmax = 100.0, scan_box = 3.0;
  unsigned long long scan_seed = 0;
  std::string scan_out;
  auto* scan = app.add_subcommand(
      "path-scan", "random search for transfer on mirror symmetric paths");
  scan->add_option("--n", scan_n, "path length in vertices")->required();
  scan->add_option("--trials", scan_trials, "number of random potentials");
  scan->add_option("--t-max", scan_tmax, "time horizon per trial");
  scan->add_option("--box", scan_box, "potential entries drawn from [-box, box]");
  scan->add_option("--seed", scan_seed, "random seed");
  scan->add_option("--out", scan_out, "write the json result here too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_args);

    if (cert->parsed()) {
      const pst::GraphFile gf = pst::load_graph_json(cert_graph);
      const auto d =
          pst::decompose(pst::build_hamiltonian(gf.graph, gf.potential));
      const auto result =
          pst::certify(d, cert_from, cert_to, cert_max_den, cert_tol);
      return emit(certificate_json(result), cert_out,
                  result.certified ? 0 : 1);
    }

    if (p3->parsed()) {
      const pst::P3Instance inst = pst::p3_instance(p3_k, p3_l);
      json j;
      j["k"] = inst.k;
      j["l"] = inst.l;
      j["q"] = inst.q;
      j["t"] = inst.t;
      return emit(j, p3_out, 0);
    }

    if (synth->parsed()) {
      const pst::GraphFile gf = pst::load_graph_json(synth_graph);
      try {
        const pst::SynthesisResult r = pst::synthesize(
            gf.graph, synth_from, synth_to, synth_dmax, synth_seeds, synth_tol);
        json j;
        j["denominator"] = r.target.denominator;
        j["fidelity"] = r.achieved_fidelity;
        j["iterations"] = r.newton_iterations;
        j["numerators"] = r.target.numerators;
        j["potential"] = r.potential;
        j["residual"] = r.residual;
        j["seed"] = r.seed;
        j["transfer_time"] = r.transfer_time;
        return emit(j, synth_out, 0);
      } catch (const pst::SynthesisError& e) {
        json j;
        j["error"] = e.what();
        j["status"] = "failed";
        return emit(j, synth_out, 1);
      }
    }

    if (prod->parsed()) {
      const pst::GraphFile f1 = pst::load_graph_json(prod_g1);
      const pst::GraphFile f2 = pst::load_graph_json(prod_g2);

      auto certified_time = [](const pst::GraphFile& gf, int u,
                               int v) -> double {
        const auto d =
            pst::decompose(pst::build_hamiltonian(gf.graph, gf.potential));
        const auto c = pst::certify(d, u, v);
        if (!c.certified)
          throw std::runtime_error("factor does not admit perfect transfer");
        return c.transfer_time;
      };
      const double t1 =
          prod_t1 ? *prod_t1 : certified_time(f1, prod_from1, prod_to1);
      const double t2 =
          prod_t2 ? *prod_t2 : certified_time(f2, prod_from2, prod_to2);

      const pst::ProductInstance inst = pst::product_pst(
          f1.graph, f1.potential, prod_from1, prod_to1, t1, f2.graph,
          f2.potential, prod_from2, prod_to2, t2);

      json j = graph_fields(inst.graph, inst.potential);
      j["fidelity"] = inst.fidelity;
      j["source"] = inst.source;
      j["target"] = inst.target;
      j["time"] = inst.time;
      return emit(j, prod_out, 0);
    }

    if (scan->parsed()) {
      const pst::ScanReport rep =
          pst::path_scan(scan_n, scan_trials, scan_tmax, scan_seed, scan_box);
      json j;
      j["best"] = record_json(rep.best);
      j["best_potential"] = rep.best_potential;
      j["n"] = rep.n;
      j["refused"] = rep.refused;
      j["threshold"] = rep.threshold;
      j["trials"] = rep.trials;
      return emit(j, scan_out, 0);
    }
  } catch (const pst::SynthesisError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
