// Command-line surface over the gkoszul C API.
//
// Subcommands: verify, divide, noether, nullstellensatz, bounds, sample,
// probe, fuhrmann. Every subcommand reads one JSON document (file path,
// "-" for stdin, or inline JSON starting with '{' or '['), runs the
// corresponding library call, and writes the report document to --output
// (atomically) or stdout.
//
// Exit status: 0 = success / PASS / feasible; 2 = well-formed negative
// (FAIL identity, Infeasible within cap, no stable sampled bound);
// 1 = input or internal error (the error document goes to stderr).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkoszul.h"

namespace {

using nlohmann::json;

std::string read_input(const std::string& spec) {
  if (spec == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) return spec;
  std::ifstream in(spec, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string(what) + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& doc) {
  if (path.empty()) {
    std::cout << doc << "\n";
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc << "\n";
    if (!out.good()) throw std::runtime_error("cannot write output file: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move output into place: " + path);
  }
}

// Frees C-API strings on scope exit.
struct CString {
  char* ptr = nullptr;
  ~CString() { gk_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct MorphismHandle {
  gk_morphism* ptr = nullptr;
  ~MorphismHandle() { gk_morphism_free(ptr); }
};

// Emits the report per the exit contract and returns the process status.
int finish(int status, const CString& report, const std::string& output_path) {
  if (status == GK_ERROR) {
    std::cerr << report.str() << "\n";
    return GK_ERROR;
  }
  write_output(output_path, report.str());
  return status;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("GKOSZUL_SEED");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (...) {
    throw std::runtime_error("GKOSZUL_SEED must be a nonnegative integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact generalized-Koszul toolkit: identity verification, "
               "degree-bounded polynomial division, and inequality samplers."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gk_version()));

  std::string input_spec;
  std::string output_path;
  std::string identity;
  std::string certificate_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> cap, count, points, trials, mu;

  auto add_io = [&](CLI::App* cmd, bool input_required = true) {
    auto* opt = cmd->add_option("-i,--input", input_spec,
                                "input document: file path, '-' for stdin, or inline JSON");
    if (input_required) opt->required();
    cmd->add_option("-o,--output", output_path,
                    "write the report here (atomic replace); default stdout");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (default: $GKOSZUL_SEED, else 0)");
  };

  auto* cmd_verify = app.add_subcommand(
      "verify", "check an exact identity for a morphism, or re-validate a certificate");
  add_io(cmd_verify, false);
  cmd_verify->add_option("--identity", identity,
                         "one of: cauchy-binet, cramer, homotopy, omskriv, omv, "
                         "complex-squares, exactness");
  cmd_verify->add_option("--certificate", certificate_path,
                         "re-validate an emitted report document instead");
  add_seed(cmd_verify);
  cmd_verify->add_option("--count", count, "random elements per level (complex-squares)");
  cmd_verify->add_option("--points", points, "surjective sample points (exactness)");

  auto* cmd_divide = app.add_subcommand("divide", "solve P Q = phi under a degree cap");
  add_io(cmd_divide);
  cmd_divide->add_option("--cap", cap, "degree cap (overrides the input document)");

  auto* cmd_noether = app.add_subcommand("noether", "solve P Q = phi with cap = deg(phi)");
  add_io(cmd_noether);

  auto* cmd_ns = app.add_subcommand("nullstellensatz", "solve P Q = identity column by column");
  add_io(cmd_ns);
  cmd_ns->add_option("--cap", cap, "degree cap (overrides the input document)");

  auto* cmd_bounds = app.add_subcommand(
      "bounds", "report degree bounds: Macaulay value, solvability clause, exponent bound");
  add_io(cmd_bounds);

  auto* cmd_sample = app.add_subcommand(
      "sample", "seeded sampler for the lojasiewicz-ratio or briancon-skoda-ratio quantity");
  add_io(cmd_sample);
  add_seed(cmd_sample);
  cmd_sample->add_option("--count", count, "sample count (overrides the input document)");
  cmd_sample->add_option("--mu", mu, "power in the denominator (-1 = default exponent)");

  auto* cmd_probe = app.add_subcommand(
      "probe", "estimate the codimension of the rank-drop locus of a morphism");
  add_io(cmd_probe);
  add_seed(cmd_probe);
  cmd_probe->add_option("--trials", trials, "random lines to test");

  auto* cmd_fuhrmann = app.add_subcommand(
      "fuhrmann", "assemble one column psi with f psi = phi from per-row solutions");
  add_io(cmd_fuhrmann);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return GK_ERROR;
  }

  try {
    std::uint64_t run_seed = seed ? *seed : default_seed();

    if (cmd_verify->parsed()) {
      if (!certificate_path.empty()) {
        if (!identity.empty())
          throw std::runtime_error("--identity and --certificate are mutually exclusive");
        std::string doc = read_input(certificate_path);
        CString report;
        int status = gk_revalidate(doc.c_str(), &report.ptr);
        return finish(status, report, output_path);
      }
      if (identity.empty())
        throw std::runtime_error("verify needs --identity or --certificate");
      if (input_spec.empty())
        throw std::runtime_error("verify --identity needs --input");

      json doc = parse_json(read_input(input_spec), "input document");
      json fdoc = doc.contains("f") ? doc["f"] : doc;
      json options = json::object();
      options["seed"] = seed ? json(*seed) : json(run_seed);
      if (count) options["count"] = *count;
      if (points) options["points"] = *points;
      if (doc.contains("psi")) options["psi"] = doc["psi"];
      if (doc.contains("phis")) options["phis"] = doc["phis"];

      MorphismHandle f;
      CString parse_err;
      f.ptr = gk_morphism_parse(fdoc.dump().c_str(), &parse_err.ptr);
      if (!f.ptr) throw std::runtime_error(parse_err.str());
      CString report;
      int status = gk_verify(f.ptr, identity.c_str(), options.dump().c_str(), &report.ptr);
      return finish(status, report, output_path);
    }

    if (cmd_divide->parsed() || cmd_noether->parsed() || cmd_ns->parsed()) {
      json doc = parse_json(read_input(input_spec), "input document");
      if (cap) doc["cap"] = *cap;
      CString report;
      int status;
      if (cmd_divide->parsed()) status = gk_divide(doc.dump().c_str(), &report.ptr);
      else if (cmd_noether->parsed()) status = gk_noether(doc.dump().c_str(), &report.ptr);
      else status = gk_nullstellensatz(doc.dump().c_str(), &report.ptr);
      return finish(status, report, output_path);
    }

    if (cmd_bounds->parsed()) {
      std::string doc = read_input(input_spec);
      CString report;
      int status = gk_bounds(doc.c_str(), &report.ptr);
      return finish(status, report, output_path);
    }

    if (cmd_sample->parsed()) {
      json doc = parse_json(read_input(input_spec), "input document");
      if (seed || !doc.contains("seed")) doc["seed"] = run_seed;
      if (count) doc["count"] = *count;
      if (mu) doc["mu"] = *mu;
      CString report;
      int status = gk_sample(doc.dump().c_str(), &report.ptr);
      return finish(status, report, output_path);
    }

    if (cmd_probe->parsed()) {
      json doc = parse_json(read_input(input_spec), "input document");
      json request = doc.contains("f") ? doc : json{{"f", doc}};
      if (seed || !request.contains("seed")) request["seed"] = run_seed;
      if (trials) request["trials"] = *trials;
      CString report;
      int status = gk_probe(request.dump().c_str(), &report.ptr);
      return finish(status, report, output_path);
    }

    if (cmd_fuhrmann->parsed()) {
      std::string doc = read_input(input_spec);
      CString report;
      int status = gk_fuhrmann(doc.c_str(), &report.ptr);
      return finish(status, report, output_path);
    }

    throw std::runtime_error("no subcommand selected");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return GK_ERROR;
  }
}
