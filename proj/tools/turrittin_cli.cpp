#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "turrittin/io.hpp"
#include "turrittin/reduce_complex.hpp"
#include "turrittin/reduce_real.hpp"
#include "turrittin/verify.hpp"

using namespace turrittin;

namespace {

enum Exit { Ok = 0, Usage = 1, Parse = 2, InvalidField = 3, Precision = 4, Unsupported = 5, Resonant = 6, VerifyFailed = 7, Other = 8 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return Parse;
    case ErrorCode::InvalidFieldDescriptor: return InvalidField;
    case ErrorCode::InsufficientPrecision: return Precision;
    case ErrorCode::UnsupportedTower:
    case ErrorCode::DegreeCapExceeded: return Unsupported;
    case ErrorCode::ResonantResidual: return Resonant;
    default: return Other;
  }
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + p.string());
  out << text;
}

struct Options {
  std::string input, chain, claimed, system, out;
  std::string mode = "complex", format = "text";
  long degree = 0;
  long precision = -1;
};

void print_report(const VerificationReport& r, const std::string& format, bool informational = false) {
  if (format == "json") {
    std::cout << r.json() << "\n";
    return;
  }
  for (const auto& c : r.checks) {
    if (informational) {
      std::cout << c.name << ": " << c.witness << "\n";
      continue;
    }
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.witness.empty()) std::cout << ": " << c.witness;
    std::cout << "\n";
  }
}

System load_system(const Options& o) {
  System a = parse_system(read_file(o.input));
  if (o.precision >= 0) a = a.truncate(o.precision);
  return a;
}

int run_analyze(const Options& o) {
  System a = load_system(o);
  InvariantData d = invariant_data(a);
  std::string note;
  try {
    Rank0Result r = o.mode == "real" ? rtrs_rank0(a) : trs_rank0(a);
    d = invariant_data(a, r.B, r.nf.r);
  } catch (const Error& e) {
    note = e.what();
  }
  VerificationReport rep = invariants_report(d);
  if (!note.empty()) rep.add("normal form", true, "unavailable: " + note);
  print_report(rep, o.format, true);
  return Ok;
}

std::string step_payload(const Step& s) {
  std::ostringstream os;
  switch (s.kind) {
    case StepKind::ConstantRegular:
    case StepKind::RegularPolynomial:
      for (size_t i = 0; i < s.poly.size(); ++i) os << (i ? " + " : "") << "x^" << i << " * " << s.poly[i].str();
      break;
    case StepKind::DiagonalMonomial:
      os << "diag(";
      for (size_t i = 0; i < s.exponents.size(); ++i) os << (i ? ", " : "") << "x^" << s.exponents[i];
      os << ")";
      break;
    case StepKind::Ramification: os << "x = z^" << s.r; break;
  }
  return os.str();
}

int run_reduce(const Options& o) {
  System a = load_system(o);
  FormalNormalForm f = o.mode == "real" ? real_formal_normal_form(a, o.degree) : formal_normal_form(a, o.degree);
  Metadata meta{{"mode", o.mode}, {"degree", std::to_string(o.degree)}};
  Json chain = chain_to_json(f.chain, a.n());
  Json phases = Json::array();
  for (const auto& p : f.phase) phases.push_back(p);
  chain["phases"] = phases;
  Json claimed = system_to_json(f.B, meta);
  Json nf = normal_form_to_json(f.nf);
  nf["principal_part"] = system_to_json(f.F);
  nf["solution"] = f.solution;
  nf["deresonation_rounds"] = std::to_string(f.deresonation_rounds);
  if (!o.out.empty()) {
    std::filesystem::path dir(o.out);
    std::filesystem::create_directories(dir);
    write_file(dir / "input.json", render_system(a));
    write_file(dir / "chain.json", render_json(chain));
    write_file(dir / "claimed.json", render_json(claimed));
    write_file(dir / "normal_form.json", render_json(nf));
    write_file(dir / "solution.txt", f.solution + "\n");
  }
  if (o.format == "json") {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "reduction";
    doc["mode"] = o.mode;
    doc["chain"] = chain;
    doc["claimed"] = claimed;
    doc["normal_form"] = nf;
    std::cout << render_json(doc);
    return Ok;
  }
  Invariants inv = system_invariants(a);
  std::cout << "mode: " << o.mode << "\n"
            << "input: n = " << a.n() << ", nu = " << inv.nu << ", q = " << inv.q << ", k = " << inv.k << ", N = " << inv.N
            << "\n"
            << "chain: " << f.chain.steps.size() << " steps, ramification " << f.chain.ramification() << "\n";
  for (size_t i = 0; i < f.chain.steps.size(); ++i)
    std::cout << "  " << i + 1 << ". [" << f.phase[i] << "] " << step_kind_name(f.chain.steps[i].kind) << ": "
              << step_payload(f.chain.steps[i]) << "\n";
  std::cout << "deresonation rounds: " << f.deresonation_rounds << "\n"
            << "normal form: q~ = " << f.nf.q << ", r = " << f.nf.r << ", mu = " << f.nf.mu << "\n";
  for (size_t i = 0; i < f.nf.D.size(); ++i) std::cout << "  D_" << i << " = " << f.nf.D[i].str() << "\n";
  std::cout << "  C = " << f.nf.C.str() << "\n"
            << "solution: " << f.solution << "\n";
  return Ok;
}

int run_verify(const Options& o) {
  System a = parse_system(read_file(o.input));
  Chain c = parse_chain(read_file(o.chain));
  System b = parse_system(read_file(o.claimed));
  VerificationReport rep;
  rep.append(check_gauge_chain(a, c, b), "chain: ");
  long q = b.is_zero() ? 0 : std::max<long>(-b.valuation() - 1, 0);
  rep.append(check_form(b, o.mode == "real" ? FormMode::RTRS : FormMode::TRS, q, o.degree), "form: ");
  if (o.mode == "real") {
    bool real = c.is_real();
    rep.add("chain: payloads real", real, real ? "" : "a gauge step has non-real entries");
  }
  print_report(rep, o.format);
  return rep.all_pass() ? Ok : VerifyFailed;
}

int run_trace(const Options& o) {
  Chain c = parse_chain(read_file(o.chain));
  bool have_system = !o.system.empty();
  System cur = have_system ? parse_system(read_file(o.system)) : System();
  Json steps = Json::array();
  for (size_t i = 0; i < c.steps.size(); ++i) {
    const Step& s = c.steps[i];
    long q_before = have_system && !cur.is_zero() ? system_invariants(cur).q : 0;
    if (have_system) cur = apply_step(cur, s);
    if (o.format == "json") {
      Json x;
      x["index"] = std::to_string(i + 1);
      x["kind"] = step_kind_name(s.kind);
      x["payload"] = step_payload(s);
      if (have_system) x["system"] = system_to_json(cur);
      steps.push_back(x);
      continue;
    }
    std::cout << "step " << i + 1 << ": " << step_kind_name(s.kind) << "\n  " << step_payload(s) << "\n";
    if (have_system) {
      if (cur.is_zero()) {
        std::cout << "  A = 0\n";
        continue;
      }
      Invariants inv = system_invariants(cur);
      std::cout << "  q: " << q_before << " -> " << inv.q << ", nu = " << inv.nu << "\n  A = " << cur.str() << "\n";
    }
  }
  if (o.format == "json") {
    Json doc;
    doc["format"] = 1;
    doc["kind"] = "trace";
    doc["steps"] = steps;
    std::cout << render_json(doc);
  }
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal reduction of linear differential systems to Turrittin-Ramis-Sibuya normal forms"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--mode", o.mode, "complex or real")->check(CLI::IsMember({"complex", "real"}));
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto* analyze = app.add_subcommand("analyze", "Print invariants and the exponential part");
  analyze->add_option("input", o.input, "system document ('-' for stdin)")->required();
  analyze->add_option("--precision", o.precision, "truncate the input to relative order N");
  common(analyze);

  auto* reduce = app.add_subcommand("reduce", "Reduce to normal form; emits chain, claimed system and solution");
  reduce->add_option("input", o.input, "system document ('-' for stdin)")->required();
  reduce->add_option("--degree", o.degree, "tail elimination degree mu")->check(CLI::NonNegativeNumber);
  reduce->add_option("--precision", o.precision, "truncate the input to relative order N");
  reduce->add_option("--out", o.out, "directory for input.json, chain.json, claimed.json, normal_form.json, solution.txt");
  common(reduce);

  auto* verify = app.add_subcommand("verify", "Replay a chain and check the claimed normal form");
  verify->add_option("input", o.input, "system document")->required();
  verify->add_option("--chain", o.chain, "chain document")->required();
  verify->add_option("--claimed", o.claimed, "claimed system document")->required();
  verify->add_option("--degree", o.degree, "degree mu of the claimed form")->check(CLI::NonNegativeNumber);
  common(verify);

  auto* trace = app.add_subcommand("trace", "Pretty-print a chain step by step");
  trace->add_option("chain", o.chain, "chain document")->required();
  trace->add_option("--system", o.system, "system to transform along the chain");
  common(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }
  try {
    if (*analyze) return run_analyze(o);
    if (*reduce) return run_reduce(o);
    if (*verify) return run_verify(o);
    if (*trace) return run_trace(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Other;
  }
  return Usage;
}
