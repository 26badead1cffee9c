// pi: command-line front end.
//
// Exit status: 0 on success or a positive verdict, 1 on a negative verdict
// (inequivalent, nondeterministic, machine did not halt), 2 on usage,
// parse and type errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pi/io.hpp"
#include "pi/pi.hpp"

namespace {

using json = nlohmann::json;
using namespace pi;

struct Options {
  std::string format = "human";
  bool expr = false;
  double tol = quantum::structural_tol;
};

Options opts;

bool as_json() { return opts.format == "json"; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open `" + path + "`");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Comb load_comb(const std::string& arg) { return parse_comb(opts.expr ? arg : slurp(arg)); }

json load_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw value_error(path + ": " + e.what());
  }
}

// Ground types for a term: the ascription if given, else the principal type.
std::pair<Type, Type> types_for(const Comb& c, const std::string& ascription) {
  if (!ascription.empty()) return parse_comb_type(ascription);
  CombType t = infer(c);
  if (!t.dom.is_ground() || !t.cod.is_ground())
    throw type_error("type " + to_string(t) + " is not ground; pass --type");
  return {t.dom, t.cod};
}

// A type pattern for a value, with a fresh metavariable for each summand the
// value does not determine.
Type shape(const Value& v, std::size_t& next) {
  switch (v.kind()) {
    case Value::Kind::unit:
      return Type::one();
    case Value::Kind::inl: {
      Type l = shape(v.first(), next);
      return Type::sum(l, Type::var(next++));
    }
    case Value::Kind::inr: {
      Type l = Type::var(next++);
      return Type::sum(l, shape(v.first(), next));
    }
    case Value::Kind::pair: {
      Type a = shape(v.first(), next);
      return Type::prod(a, shape(v.second(), next));
    }
  }
  return Type::one();
}

void print(const json& j, const std::string& human) {
  if (as_json())
    std::cout << j.dump() << "\n";
  else
    std::cout << human << "\n";
}

int cmd_check(const std::string& file, const std::string& type) {
  Comb c = load_comb(file);
  if (type.empty()) {
    CombType t = infer(c);
    print({{"term", to_string(c)}, {"type", to_string(t)}}, to_string(t));
    return 0;
  }
  auto [dom, cod] = parse_comb_type(type);
  check(c, dom, cod);
  print({{"term", to_string(c)}, {"type", to_string(dom) + " <-> " + to_string(cod)}},
        to_string(dom) + " <-> " + to_string(cod));
  return 0;
}

int cmd_run(const std::string& file, const std::string& input, bool backward, const std::string& type) {
  Comb c = load_comb(file);
  Value v = parse_value(input);
  Value out;
  if (!type.empty()) {
    auto [dom, cod] = parse_comb_type(type);
    Derivation d = check(c, dom, cod);
    out = backward ? reval(d, v) : eval(d, v);
  } else {
    // Fit the principal type to the shape of the input.
    std::size_t next = 0;
    Type s = shape(v, next);
    Type other = Type::var(next);
    try {
      infer(backward ? Comb::ascribe(c, other, s) : Comb::ascribe(c, s, other));
    } catch (const type_error& e) {
      throw type_error(to_string(v) + " does not fit the " + (backward ? "codomain" : "domain") + " of " +
                       to_string(infer(c)) + ": " + e.what());
    }
    out = backward ? reval(c, v) : eval(c, v);
  }
  print({{"input", to_string(v)}, {"output", to_string(out)}}, to_string(out));
  return 0;
}

int cmd_invert(const std::string& file) {
  Comb c = invert(load_comb(file));
  CombType t = infer(c);
  print({{"term", to_string(c)}, {"type", to_string(t)}}, to_string(c));
  return 0;
}

int cmd_equiv(const std::string& a, const std::string& b, const std::string& type) {
  Comb x = load_comb(a);
  Comb y = load_comb(b);
  auto [dom, cod] = types_for(x, type);
  bool same = equiv(x, y, dom, cod);
  print({{"equivalent", same}, {"type", to_string(dom) + " <-> " + to_string(cod)}},
        same ? "equivalent" : "not equivalent");
  return same ? 0 : 1;
}

int cmd_denote(const std::string& file, const std::string& type) {
  Comb c = load_comb(file);
  auto [dom, cod] = types_for(c, type);
  Permutation p = denote(c, dom, cod);
  std::cout << json(p.image()).dump() << "\n";
  return 0;
}

int cmd_synth(const std::string& perm, const std::string& type) {
  Permutation p = io::permutation_from_string(perm);
  Type b = type.empty() ? canonical_type(p.size()) : parse_type(type);
  Comb c = synth_perm(p, b);
  // The result is checked before it is printed.
  if (denote(c, b, b) != p) throw std::logic_error("synthesised term does not denote the permutation");
  print({{"term", to_string(c)}, {"type", to_string(b) + " <-> " + to_string(b)}, {"size", term_size(c)}},
        to_string(c));
  return 0;
}

int cmd_factor(const std::string& fun, std::size_t dom, std::size_t cod) {
  FinFun f = io::function_from_string(fun, dom, cod);
  Factorization fz = factorize(f);
  json j = io::factorization_to_json(fz);
  if (as_json()) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "heap " << fz.heap << ", garbage " << fz.garbage << "\n"
              << "bij " << to_string(fz.bij) << "\n"
              << "recomposed " << json(recompose(fz).table()).dump() << "\n";
  }
  return recompose(fz) == f ? 0 : 1;
}

int cmd_arrow_equiv(const std::string& a, const std::string& b) {
  io::LayerTerm x = io::layer_from_json(load_json(a));
  io::LayerTerm y = io::layer_from_json(load_json(b));
  bool same = io::layer_equal(x, y);
  if (as_json())
    std::cout << json{{"equal", same}, {"first", io::layer_summary(x)}, {"second", io::layer_summary(y)}}.dump()
              << "\n";
  else
    std::cout << (same ? "equal" : "not equal") << "\n";
  return same ? 0 : 1;
}

quantum::Vector read_state(const std::string& s, const Type& dom) {
  auto n = static_cast<Eigen::Index>(size(dom));
  auto first = s.find_first_not_of(" \t\n");
  if (first != std::string::npos && s[first] == '[') {
    quantum::Vector v = io::vector_from_json(json::parse(s));
    if (v.size() != n) throw value_error("state has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
    return v;
  }
  Value v = parse_value(s);
  return quantum::basis(n, static_cast<Eigen::Index>(idx(v, dom)));
}

int cmd_qrun(const std::string& file, const std::string& state, const std::string& type) {
  Comb c = load_comb(file);
  auto [dom, cod] = types_for(c, type);
  quantum::Matrix u = quantum::denote_q(c, dom, cod);
  quantum::Vector psi = read_state(state, dom);
  quantum::Vector out = u * psi;
  if (as_json()) {
    std::cout << json{{"state", io::vector_to_json(out)}}.dump() << "\n";
  } else {
    for (Eigen::Index k = 0; k < out.size(); ++k) {
      auto z = out(k);
      if (std::abs(z) < 1e-12) continue;
      std::cout << "(" << io::clean(z.real()) << (z.imag() < 0 ? "-" : "+") << std::abs(io::clean(z.imag()))
                << "i) |" << to_string(value_of(cod, static_cast<std::uint64_t>(k))) << ">\n";
    }
  }
  return 0;
}

int cmd_qchan(const std::string& file, const std::string& rho_text, const std::string& type,
              const std::string& measure_type, std::optional<long> input_dim, long garbage) {
  std::optional<quantum::Channel> ch;
  if (!measure_type.empty()) {
    ch = quantum::measure_channel(parse_type(measure_type));
  } else {
    if (file.empty()) throw error("qchan needs a program or --measure");
    Comb c = load_comb(file);
    auto [dom, cod] = types_for(c, type);
    quantum::Matrix u = quantum::denote_q(c, dom, cod);
    long d = input_dim ? *input_dim : static_cast<long>(u.cols());
    if (d < 0 || d > u.cols()) throw size_error("input dimension exceeds the term's domain");
    ch = quantum::chan_lift(quantum::Isometry(u.leftCols(d)), garbage);
  }
  json rj;
  try {
    rj = json::parse(rho_text);
  } catch (const json::parse_error&) {
    rj = load_json(rho_text);
  }
  quantum::DensityMatrix rho(io::matrix_from_json(rj), opts.tol);
  quantum::Matrix out = ch->apply(rho.matrix());
  json j{{"rho", io::matrix_to_json(out)},
         {"trace_preserving", ch->is_trace_preserving(opts.tol)},
         {"completely_positive", ch->is_completely_positive(opts.tol)},
         {"prep_dim", ch->prep_dim()},
         {"discard_dim", ch->discard_dim()}};
  if (as_json()) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "probabilities";
    for (Eigen::Index k = 0; k < out.rows(); ++k) std::cout << " " << io::clean(out(k, k).real());
    std::cout << "\n" << j["rho"].dump() << "\n";
  }
  return 0;
}

json tapes_json(const std::vector<tm::Tape>& tapes, const tm::Symbol& blank) {
  json out = json::array();
  for (const auto& t : tapes) out.push_back({{"content", tm::join(tm::contents(t, blank))}, {"head", t.head}});
  return out;
}

int cmd_tm(const std::string& action, const std::string& file, const std::string& input, std::size_t fuel) {
  tm::Machine m = io::machine_from_json(load_json(file));
  auto in = tm::symbols_of(input);
  if (action == "check") {
    auto f = tm::check_forward_deterministic(m);
    auto b = tm::check_backward_deterministic(m);
    if (as_json()) {
      std::cout << json{{"forward", io::report_to_json(f)}, {"backward", io::report_to_json(b)}}.dump() << "\n";
    } else {
      std::cout << "forward deterministic: " << (f.deterministic ? "yes" : "no") << "\n";
      for (auto v : f.violations) std::cout << "  rules " << v.first << " and " << v.second << "\n";
      std::cout << "backward deterministic: " << (b.deterministic ? "yes" : "no") << "\n";
      for (auto v : b.violations) std::cout << "  rules " << v.first << " and " << v.second << "\n";
    }
    return f.deterministic && b.deterministic ? 0 : 1;
  }
  if (action == "run" || action == "landauer") {
    tm::Machine target = action == "run" ? m : tm::landauer_instrument(m);
    tm::Run r = tm::run(target, tm::initial(target, in), fuel);
    json j{{"outcome", tm::to_string(r.outcome)},
           {"state", r.config.state},
           {"steps", r.steps},
           {"tapes", tapes_json(r.config.tapes, m.blank)}};
    if (as_json()) {
      if (action == "landauer") j["machine"] = io::machine_to_json(target);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << tm::to_string(r.outcome) << " in state " << r.config.state << " after " << r.steps << " steps\n";
      for (std::size_t t = 0; t < r.config.tapes.size(); ++t)
        std::cout << "tape " << t + 1 << ": " << tm::join(tm::contents(r.config.tapes[t], m.blank)) << "\n";
    }
    return r.outcome == tm::Outcome::halted ? 0 : 1;
  }
  if (action == "bennett") {
    tm::BennettResult r = tm::run_bennett(m, in, fuel);
    tm::Machine b = tm::bennett(m);
    bool fwd = tm::check_forward_deterministic(b).deterministic;
    bool bwd = tm::check_backward_deterministic(b).deterministic;
    json j{{"tape1", tm::join(r.tape1)},      {"tape2", tm::join(r.tape2)},   {"tape3", tm::join(r.tape3)},
           {"steps", r.run.steps},            {"forward_deterministic", fwd}, {"backward_deterministic", bwd},
           {"rules", b.rules.size()}};
    if (as_json())
      std::cout << j.dump() << "\n";
    else
      std::cout << "tape 1: " << tm::join(r.tape1) << "\ntape 2: " << tm::join(r.tape2)
                << "\ntape 3: " << tm::join(r.tape3) << "\n"
                << r.run.steps << " steps, " << b.rules.size() << " rules, deterministic forward "
                << (fwd ? "yes" : "no") << ", backward " << (bwd ? "yes" : "no") << "\n";
    return fwd && bwd ? 0 : 1;
  }
  throw error("unknown tm action `" + action + "`");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolchain for the reversible language Pi"};
  app.require_subcommand(1);
  app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_flag("-e,--expr", opts.expr, "Treat program arguments as source text instead of file names");
  app.add_option("--tol", opts.tol, "Tolerance for quantum structural checks");

  std::string file, file2, type, input, perm, fun, state, rho, measure, action;
  bool reverse = false;
  std::size_t dom = 0, cod = 0, fuel = 100000;
  long garbage = 1;
  std::optional<long> input_dim;
  int code = 0;

  auto* check = app.add_subcommand("check", "Infer or check the type of a program");
  check->add_option("program", file)->required();
  check->add_option("--type", type, "Ground type `b1 <-> b2` to check against");
  check->callback([&] { code = cmd_check(file, type); });

  auto* run = app.add_subcommand("run", "Evaluate a program on a value");
  run->add_option("program", file)->required();
  run->add_option("--input", input, "Input value")->required();
  run->add_flag("--reverse", reverse, "Run backwards");
  run->add_option("--type", type);
  run->callback([&] { code = cmd_run(file, input, reverse, type); });

  auto* inv = app.add_subcommand("invert", "Print the inverse program");
  inv->add_option("program", file)->required();
  inv->callback([&] { code = cmd_invert(file); });

  auto* eq = app.add_subcommand("equiv", "Decide whether two programs are equivalent");
  eq->add_option("first", file)->required();
  eq->add_option("second", file2)->required();
  eq->add_option("--type", type);
  eq->callback([&] { code = cmd_equiv(file, file2, type); });

  auto* den = app.add_subcommand("denote", "Print the permutation a program denotes");
  den->add_option("program", file)->required();
  den->add_option("--type", type);
  den->callback([&] { code = cmd_denote(file, type); });

  auto* syn = app.add_subcommand("synth", "Synthesise a program for a permutation");
  syn->add_option("--perm", perm, "Permutation, e.g. [1,0,2]")->required();
  syn->add_option("--type", type, "Type to act on (default: the canonical type of that size)");
  syn->callback([&] { code = cmd_synth(perm, type); });

  auto* fac = app.add_subcommand("factor", "Factor a finite function through a bijection");
  fac->add_option("--fun", fun, "Function table, e.g. 0:0,1:0")->required();
  fac->add_option("--dom", dom)->required();
  fac->add_option("--cod", cod)->required();
  fac->callback([&] { code = cmd_factor(fun, dom, cod); });

  auto* arr = app.add_subcommand("arrow-equiv", "Compare two layer terms extensionally");
  arr->add_option("first", file)->required();
  arr->add_option("second", file2)->required();
  arr->callback([&] { code = cmd_arrow_equiv(file, file2); });

  auto* qrun = app.add_subcommand("qrun", "Apply a program's unitary to a state");
  qrun->add_option("program", file)->required();
  qrun->add_option("--state", state, "JSON amplitude array or a basis value")->required();
  qrun->add_option("--type", type);
  qrun->callback([&] { code = cmd_qrun(file, state, type); });

  auto* qchan = app.add_subcommand("qchan", "Apply a channel to a density matrix");
  qchan->add_option("program", file);
  qchan->add_option("--rho", rho, "Density matrix as JSON, inline or a file")->required();
  qchan->add_option("--type", type);
  qchan->add_option("--measure", measure, "Use computational-basis measurement on this type");
  qchan->add_option("--input-dim", input_dim, "Input dimension; the rest of the domain is the prepared ancilla");
  qchan->add_option("--garbage", garbage, "Dimension of the traced-out output factor");
  qchan->callback([&] { code = cmd_qchan(file, rho, type, measure, input_dim, garbage); });

  auto* tmc = app.add_subcommand("tm", "Turing machines: run, check, landauer, bennett");
  tmc->add_option("action", action)->required()->check(CLI::IsMember({"run", "check", "landauer", "bennett"}));
  tmc->add_option("machine", file)->required();
  tmc->add_option("--input", input);
  tmc->add_option("--fuel", fuel);
  tmc->callback([&] { code = cmd_tm(action, file, input, fuel); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const pi::syntax_error& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const pi::type_error& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
