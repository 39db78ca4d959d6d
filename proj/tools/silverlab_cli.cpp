// silverlab: batch front-end over scenario documents.
//
// Exit status: 0 when every check passed, 1 when some check failed, 2 on
// usage, parse or evaluation errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "silverlab/scenario.hpp"
#include "silverlab/speclang.hpp"
#include "silverlab/swr.hpp"

using namespace silverlab;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

struct Output {
  bool json = false;
  std::string csv_path;
  std::string cert_path;
};

json to_json(const Report& r) {
  json j;
  j["title"] = r.title;
  j["ok"] = r.ok;
  j["lines"] = r.lines;
  j["fields"] = r.fields;
  j["csv"] = {{"header", r.csv_header}, {"rows", r.csv_rows}};
  if (!r.certificates.empty()) j["certificates"] = r.certificates;
  return j;
}

int emit(const std::string& command, const std::vector<Report>& reports, const Output& out) {
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok;
  if (out.json) {
    json env;
    env["command"] = command;
    env["ok"] = ok;
    env["reports"] = json::array();
    for (const auto& r : reports) env["reports"].push_back(to_json(r));
    std::cout << env.dump(2) << "\n";
  } else {
    for (const auto& r : reports) std::cout << r.text();
  }
  if (!out.csv_path.empty()) {
    std::string csv;
    for (const auto& r : reports) csv += (reports.size() > 1 ? "# " + r.title + "\n" : "") + r.csv();
    spill(out.csv_path, csv);
  }
  if (!out.cert_path.empty()) {
    std::string certs;
    for (const auto& r : reports)
      for (const auto& c : r.certificates) certs += c;
    spill(out.cert_path, certs);
  }
  return ok ? 0 : 1;
}

/// The document in `path` with `extra` statements appended. Statements the
/// subcommand adds refer to the document's bindings by their conventional
/// names (F, b, f, B).
lang::Document with_runs(const std::string& path, const std::string& extra) {
  std::string text = path.empty() ? "" : slurp(path);
  if (!text.empty() && text.back() != '\n') text += '\n';
  // the document's own runs are dropped
  const auto own_lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  lang::Document out;
  for (auto& s : lang::parse(text + extra).statements)
    if (s.kind == lang::Statement::Kind::Binding || s.loc.line > own_lines) out.statements.push_back(std::move(s));
  return out;
}

void require_binding(const lang::Document& doc, const std::string& name, const std::string& path) {
  if (!doc.binding(name)) throw UsageError(path + " has no binding named '" + name + "'");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

Report check_cert(const std::string& path) {
  const std::string text = slurp(path);
  Report r;
  r.title = "check-cert";
  const Certificate cert = read_certificate(text);
  const bool canonical = write_certificate(cert) == text;
  if (canonical)
    r.line("certificate re-serializes byte-for-byte");
  else
    r.fail("certificate is not in canonical form");
  r.csv_header = {"derivation", "steps", "valid", "claim", "conclusion"};
  for (const auto& e : cert.entries) {
    const auto c = check_derivation(e.d);
    const std::string head = e.name + ": ";
    if (!c.valid)
      r.fail(head + "invalid at step " + std::to_string(c.step) + ": " + c.reason);
    else if (c.conclusion != e.claim)
      r.fail(head + "valid, but concludes " + relation_pretty(c.conclusion) + " where " +
             relation_pretty(e.claim) + " is claimed");
    else
      r.line(head + "valid: conclusion " + relation_pretty(c.conclusion));
    r.csv_rows.push_back({e.name, std::to_string(e.d.steps.size()), c.valid ? "yes" : "no",
                          relation_symbol(e.claim), c.valid ? relation_symbol(c.conclusion) : ""});
  }
  r.fields["derivations"] = std::to_string(cert.entries.size());
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"silverlab: Silver conditions, coalitions and welfare derivations"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  std::uint64_t seed = 0;
  app.add_flag("--json", out.json, "Print reports as a JSON envelope");
  app.add_option("--csv", out.csv_path, "Write the CSV tables to this file");
  app.add_option("--seed", seed, "Seed for randomized sweeps");

  std::string file;
  auto add_file = [&](CLI::App* sub) { sub->add_option("-f,--file", file, "Scenario document (.svl)")->required(); };

  // density / triples
  std::string desc;
  std::vector<std::uint64_t> horizons{10, 100, 1000, 10000};
  std::uint64_t horizon = 10000;
  auto* density = app.add_subcommand("density", "Density estimates of a coalition");
  density->add_option("desc", desc, "Coalition expression")->required();
  density->add_option("--horizons", horizons, "Sample points")->delimiter(',');
  auto* triples = app.add_subcommand("triples", "Three consecutive members below a horizon");
  triples->add_option("desc", desc, "Coalition expression")->required();
  triples->add_option("--horizon", horizon, "Scan bound");

  auto* irrelevance = app.add_subcommand("irrelevance", "Is coalition b irrelevant for F on N_f (bindings F, b, f; optional B)");
  add_file(irrelevance);

  std::string family = "Dplus(0.9)";
  auto* antidem = app.add_subcommand("antidem", "Search for an irrelevant large coalition (binding F)");
  add_file(antidem);
  antidem->add_option("--family", family, "Finplus, Dplus(q), Sstar or Fstar");

  std::string delta = "1/2";
  std::uint64_t rounds = 3;
  std::vector<std::string> oracles;
  auto* build = app.add_subcommand("build-tree", "Build the delta-tree through dense sets");
  build->add_option("--delta", delta, "Target ratio");
  build->add_option("--rounds", rounds, "Number of rounds");
  build->add_option("--oracle", oracles, "Dense-set preset, e.g. ones(2) or contains([1,0,1]); repeatable")->required();

  std::uint64_t depth = 40;
  auto* escape = app.add_subcommand("escape", "Escape witness for a V-infinity condition (binding f)");
  add_file(escape);
  escape->add_option("--depth", depth, "Cylinder check depth");

  bool in = false, outw = false;
  std::uint64_t levels = 5;
  auto* witness = app.add_subcommand("witness-f", "Points of N_f inside / outside F (binding f)");
  add_file(witness);
  auto* in_flag = witness->add_flag("--in", in, "Witness in F");
  auto* out_flag = witness->add_flag("--out", outw, "Witness outside F");
  in_flag->excludes(out_flag);
  witness->add_option("--levels", levels, "Levels checked");
  witness->add_option("--depth", depth, "Cylinder check depth");

  std::string which = "eo", variant = "sefa", swr_delta = "3/4";
  auto* swr = app.add_subcommand("swr-witness", "Case bundle of welfare derivations (binding f)");
  add_file(swr);
  swr->add_option("--case", which, "eo, oe or sim")->check(CLI::IsMember({"eo", "oe", "sim"}));
  swr->add_option("--variant", variant, "sefa or pfa")->check(CLI::IsMember({"sefa", "pfa"}));
  swr->add_option("--delta", swr_delta, "Density of the free set");
  swr->add_option("--horizon", horizon, "Triple search bound");
  swr->add_option("--cert-out", out.cert_path, "Write the certificate here");

  std::string cert_file;
  auto* check = app.add_subcommand("check-cert", "Re-check a derivation certificate");
  check->add_option("file", cert_file, "Certificate")->required();

  bool meet = false, densify = false;
  std::uint64_t height = 1, kmax = 6;
  auto* forcing = app.add_subcommand("forcing", "Meet dense sets or densify (binding f for --densify)");
  auto* meet_flag = forcing->add_flag("--meet", meet, "Meet the given dense sets");
  auto* densify_flag = forcing->add_flag("--densify", densify, "Densify along the spine of f");
  meet_flag->excludes(densify_flag);
  forcing->add_option("--oracle", oracles, "Dense-set preset; repeatable");
  forcing->add_option("--height", height, "Height of the starting cube");
  forcing->add_option("-f,--file", file, "Scenario document (.svl)");
  forcing->add_option("--delta", delta, "Target density");
  forcing->add_option("-k", kmax, "Densify up to this k");

  auto* run = app.add_subcommand("run", "Run every directive of a document");
  add_file(run);

  auto* fmt = app.add_subcommand("fmt", "Print a document in canonical form");
  add_file(fmt);

  std::string kind = "swr";
  std::uint64_t count = 20;
  auto* sweep_cmd = app.add_subcommand("sweep", "Seeded randomized checks");
  sweep_cmd->add_option("--kind", kind, "density, irrelevance or swr")
      ->check(CLI::IsMember({"density", "irrelevance", "swr"}));
  sweep_cmd->add_option("--count", count, "Number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const RunOptions opts{seed};
  auto run_doc = [&](const lang::Document& doc) { return run_document(doc, opts); };
  try {
    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    std::vector<Report> reports;
    if (sub == density) {
      reports = run_doc(lang::parse("A = " + desc + "\nrun density(A, horizons=[" +
                                    join([&] {
                                      std::vector<std::string> v;
                                      for (auto h : horizons) v.push_back(std::to_string(h));
                                      return v;
                                    }(), ",") + "])\n"));
    } else if (sub == triples) {
      reports = run_doc(lang::parse("A = " + desc + "\nrun triples(A, horizon=" + std::to_string(horizon) + ")\n"));
    } else if (sub == irrelevance) {
      const auto base = with_runs(file, "");
      for (const char* n : {"F", "b", "f"}) require_binding(base, n, file);
      reports = run_doc(with_runs(file, std::string("run irrelevance(F, b, f") + (base.binding("B") ? ", B=B" : "") + ")\n"));
    } else if (sub == antidem) {
      require_binding(with_runs(file, ""), "F", file);
      reports = run_doc(with_runs(file, "run antidem(F, " + family + ")\n"));
    } else if (sub == build) {
      reports = run_doc(lang::parse("run build_tree(oracles=[" + join(oracles, ", ") + "], delta=" + delta +
                                    ", rounds=" + std::to_string(rounds) + ")\n"));
    } else if (sub == escape) {
      require_binding(with_runs(file, ""), "f", file);
      reports = run_doc(with_runs(file, "run escape(f, depth=" + std::to_string(depth) + ")\n"));
    } else if (sub == witness) {
      if (!in && !outw) throw UsageError("witness-f needs --in or --out");
      require_binding(with_runs(file, ""), "f", file);
      reports = run_doc(with_runs(file, std::string("run witness_f(f, mode=") + (in ? "in" : "out") + ", levels=" +
                                            std::to_string(levels) + ", depth=" + std::to_string(depth) + ")\n"));
    } else if (sub == swr) {
      require_binding(with_runs(file, ""), "f", file);
      reports = run_doc(with_runs(file, "run swr_witness(f, delta=" + swr_delta + ", case=" + which + ", variant=" +
                                            variant + ", horizon=" + std::to_string(horizon) + ")\n"));
    } else if (sub == check) {
      reports.push_back(check_cert(cert_file));
    } else if (sub == forcing) {
      if (meet == densify) throw UsageError("forcing needs exactly one of --meet, --densify");
      if (meet) {
        if (oracles.empty()) throw UsageError("forcing --meet needs at least one --oracle");
        reports = run_doc(lang::parse("run forcing(mode=meet, oracles=[" + join(oracles, ", ") +
                                      "], height=" + std::to_string(height) + ")\n"));
      } else {
        if (file.empty()) throw UsageError("forcing --densify needs -f with a binding f");
        require_binding(with_runs(file, ""), "f", file);
        std::string extra = "run forcing(mode=densify, f, delta=" + delta + ", k=" + std::to_string(kmax);
        if (!oracles.empty()) extra += ", start=" + oracles.front();
        reports = run_doc(with_runs(file, extra + ")\n"));
      }
    } else if (sub == run) {
      const auto doc = lang::parse(slurp(file));
      if (doc.runs().empty()) throw UsageError(file + " has no run statements");
      reports = run_doc(doc);
    } else if (sub == fmt) {
      std::cout << lang::print(lang::parse(slurp(file)));
      return 0;
    } else if (sub == sweep_cmd) {
      reports.push_back(sweep(kind, count, seed));
    }
    return emit(name, reports, out);
  } catch (const lang::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
