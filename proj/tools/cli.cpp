#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "gct/errors.hpp"
#include "gct/exact.hpp"
#include "gct/invariant_theory.hpp"
#include "gct/kronecker.hpp"
#include "gct/plethysm.hpp"
#include "gct/polyspace.hpp"
#include "gct/semigroup.hpp"
#include "gct/signed_latin.hpp"
#include "gct/tableau.hpp"
#include "gct/tensor_invariants.hpp"
#include "gct/text_io.hpp"

namespace gct::cli {

namespace {

using json = nlohmann::ordered_json;

// Default for report verbs whose deciding evaluation can run long.
constexpr double kReportBudget = 60.0;

struct NeedBudget : InvalidInput {
  explicit NeedBudget(const std::string& what)
      : InvalidInput(what + " can run for a very long time; pass --budget <seconds> to allow it") {}
};

struct Globals {
  bool json = false;
  double budget = -1;
  int threads = 1;
  std::string checkpoint;
  bool no_symmetry = false;

  SearchOptions search() const {
    SearchOptions s;
    s.threads = threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (budget >= 0) s.budget_seconds = budget;
    s.checkpoint_path = checkpoint;
    return s;
  }
  SearchOptions report_search() const {
    SearchOptions s = search();
    if (!s.budget_seconds) s.budget_seconds = kReportBudget;
    return s;
  }
  bool has_budget() const { return budget >= 0; }
};

struct Result {
  std::string value;
  json meta = json::object();
  std::vector<std::pair<std::string, std::string>> lines;  // plain-mode report body
  bool table = false;                                       // lines print as "key value"
};

void print(const Result& r, const Globals& g, std::ostream& out) {
  if (g.json) {
    json j;
    j["value"] = r.value;
    j["meta"] = r.meta;
    out << j.dump() << "\n";
    return;
  }
  if (r.lines.empty()) {
    out << r.value << "\n";
    return;
  }
  for (const auto& [k, v] : r.lines) out << k << (r.table ? " " : ": ") << v << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto parse_file(const std::string& path, F parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

struct ObjectArgs {
  std::string kind;
  int D = 0, m = 0, n = 0;

  void add(CLI::App* sub) {
    sub->add_option("--kind", kind, "product, power-sum, det, per, unit, matmul, generic-form, generic-tensor");
    sub->add_option("--D", D, "degree");
    sub->add_option("--m", m, "number of variables / tensor dimension");
    sub->add_option("--n", n, "matrix size (det, per, matmul)");
  }
  bool given() const { return !kind.empty(); }

  NamedObject object() const {
    if (kind.empty()) throw InvalidInput("--kind is required");
    NamedKind k = parse_kind(kind);
    auto need = [&](int v, const char* flag) {
      if (v <= 0) throw InvalidInput(std::string(flag) + " is required for --kind " + kind);
      return v;
    };
    NamedObject o{k, 0, 0, 0};
    switch (k) {
      case NamedKind::product: o = NamedObject::product(need(m, "--m")); break;
      case NamedKind::power_sum: o = NamedObject::power_sum(need(D, "--D"), need(m, "--m")); break;
      case NamedKind::determinant: o = NamedObject::determinant(need(n, "--n")); break;
      case NamedKind::permanent: o = NamedObject::permanent(need(n, "--n")); break;
      case NamedKind::unit_tensor: o = NamedObject::unit_tensor(need(m, "--m")); break;
      case NamedKind::matmul_tensor: o = NamedObject::matmul_tensor(need(n, "--n")); break;
      case NamedKind::generic_form: o = NamedObject::generic_form(need(D, "--D"), need(m, "--m")); break;
      case NamedKind::generic_tensor: o = NamedObject::generic_tensor(need(m, "--m")); break;
    }
    o.validate();
    return o;
  }
};

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

template <class T>
std::string join_str(const std::vector<T>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, BigInt>) {
      s += v[i].get_str();
    } else {
      s += std::to_string(v[i]);
    }
  }
  return s;
}

std::optional<int> exact_sqrt(int m) {
  int n = 0;
  while ((n + 1) * (n + 1) <= m) ++n;
  return n * n == m ? std::optional<int>(n) : std::nullopt;
}

BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// ---- invariant form -------------------------------------------------------

struct InvariantFormCmd {
  ObjectArgs obj;
  std::string file;
  std::string which = "auto";
  std::string engine = "auto";
  bool relabel = false;

  Result run(const Globals& g) const {
    std::optional<NamedObject> named;
    SparseForm f(1, 1);
    if (!file.empty()) {
      f = parse_file(file, [](const std::string& t) { return parse_form(t); });
    } else {
      named = obj.object();
      if (!named->is_form()) throw InvalidInput("--kind " + obj.kind + " is not a form");
      if ((named->kind == NamedKind::determinant || named->kind == NamedKind::permanent) && named->n >= 3 &&
          !g.has_budget()) {
        throw NeedBudget("the invariant of " + named->name());
      }
      f = named_form(*named);
    }
    const int D = f.degree(), m = f.m();
    std::string mode = which;
    if (mode == "auto") {
      if (D % 2 == 0) {
        mode = "generic";
      } else if (D == m) {
        mode = "cyclic";
      } else {
        mode = "power-sum-tableau";
      }
    }
    TableauEvalOptions opts;
    opts.search = g.search();
    opts.relabel_symmetry = relabel;
    if (engine == "by-factor") {
      opts.engine = TableauEngine::by_factor;
    } else if (engine == "by-column") {
      opts.engine = TableauEngine::by_column;
    } else if (engine != "auto") {
      throw InvalidInput("unknown engine '" + engine + "'");
    }
    SparseTensor v = form_to_tensor(f);
    Rational val;
    int degree = 0;
    if (mode == "generic") {
      val = eval_generic_invariant(D, m, v, opts);
      degree = m;
    } else if (mode == "cyclic") {
      if (D != m) throw InvalidInput("the cyclic invariant needs D = m");
      val = eval_cyclic_invariant(D, v, opts);
      degree = D + 1;
    } else if (mode == "power-sum-tableau") {
      val = eval_tableau_invariant(power_sum_tableau(D, m), v, opts);
      degree = 2 * m;
    } else {
      throw InvalidInput("unknown invariant '" + which + "'");
    }
    Result r;
    r.value = to_string(val);
    r.meta["object"] = named ? named->name() : "form from " + file;
    r.meta["invariant"] = mode;
    r.meta["D"] = D;
    r.meta["m"] = m;
    r.meta["degree"] = degree;
    r.meta["normalization"] = "tensor";
    // Count-normalized values of the signed enumeration identities.
    if (named) {
      std::optional<BigInt> scale;
      if (named->kind == NamedKind::product && mode == "generic") scale = ipow(factorial(m), m);
      if (named->kind == NamedKind::product && mode == "cyclic") scale = ipow(factorial(m), m + 1);
      if ((named->kind == NamedKind::determinant || named->kind == NamedKind::permanent) && mode == "generic") {
        scale = ipow(factorial(named->n), named->n * named->n);
      }
      if (scale) r.meta["count_normalized"] = to_string(Rational(val * *scale));
    }
    return r;
  }
};

// ---- invariant tensor -----------------------------------------------------

struct InvariantTensorCmd {
  ObjectArgs obj;
  std::string file;
  std::vector<int> format;
  bool relabel = false;

  Result run(const Globals& g) const {
    Result r;
    FnOptions opts;
    opts.search = g.search();
    opts.relabel_symmetry = relabel;
    if (!file.empty()) {
      SparseTensor w = parse_file(file, [](const std::string& t) { return parse_tensor(t); });
      if (w.order() != 3) throw InvalidInput("F needs an order-3 tensor");
      std::array<int, 3> nf{};
      if (!format.empty()) {
        if (format.size() != 3) throw InvalidInput("--format needs three sizes");
        std::copy(format.begin(), format.end(), nf.begin());
      } else {
        auto n = w.is_cubic() ? exact_sqrt(w.shape()[0]) : std::nullopt;
        if (!n) throw InvalidInput("tensor shape is not (n^2,n^2,n^2); pass --format n1,n2,n3");
        nf = {*n, *n, *n};
      }
      if (nf[0] * nf[1] * nf[2] >= 27 && !g.has_budget()) {
        throw NeedBudget("F at format " + join({nf[0], nf[1], nf[2]}));
      }
      r.value = to_string(eval_F_format(nf[0], nf[1], nf[2], w, opts));
      r.meta["object"] = "tensor from " + file;
      r.meta["format"] = join({nf[0], nf[1], nf[2]});
      return r;
    }
    NamedObject o = obj.object();
    if (o.is_form()) throw InvalidInput("--kind " + obj.kind + " is not a tensor");
    auto n = exact_sqrt(o.m);
    if (!n) throw InvalidInput("F_n needs m = n^2");
    if (*n >= 3 && !g.has_budget()) throw NeedBudget("F_" + std::to_string(*n) + " of " + o.name());
    if (o.kind == NamedKind::matmul_tensor) {
      r.value = to_string(eval_Fn_matmul(*n, opts.search));
      r.meta["route"] = "matmul sign sum";
    } else {
      r.value = to_string(eval_Fn(*n, named_tensor(o), opts));
      r.meta["route"] = "labeling triples";
    }
    r.meta["object"] = o.name();
    r.meta["n"] = *n;
    r.meta["degree"] = *n * *n * *n;
    return r;
  }
};

// ---- eval-tableau ---------------------------------------------------------

struct EvalTableauCmd {
  std::string tableau_file;
  std::string tensor_file;
  std::string form_file;
  ObjectArgs obj;
  bool relabel = false;

  Result run(const Globals& g) const {
    Tableau T = parse_file(tableau_file, [](const std::string& t) { return parse_tableau(t); });
    int inputs = !tensor_file.empty() + !form_file.empty() + obj.given();
    if (inputs != 1) throw InvalidInput("give exactly one of --tensor, --form, --kind");
    SparseTensor v = SparseTensor::cubic(1, 1);
    std::string what;
    if (!tensor_file.empty()) {
      v = parse_file(tensor_file, [](const std::string& t) { return parse_tensor(t); });
      what = "tensor from " + tensor_file;
    } else if (!form_file.empty()) {
      v = form_to_tensor(parse_file(form_file, [](const std::string& t) { return parse_form(t); }));
      what = "form from " + form_file;
    } else {
      NamedObject o = obj.object();
      v = o.is_form() ? form_to_tensor(named_form(o)) : named_tensor(o);
      what = o.name();
    }
    TableauEvalOptions opts;
    opts.search = g.search();
    opts.relabel_symmetry = relabel;
    Result r;
    r.value = to_string(eval_tableau_invariant(T, v, opts));
    r.meta["object"] = what;
    r.meta["rows"] = T.rows();
    r.meta["cols"] = T.cols();
    r.meta["degree"] = T.symbols();
    return r;
  }
};

// ---- count ----------------------------------------------------------------

struct CountCmd {
  LatinQuery q;
  std::vector<int> sizes;
  std::string weighting = "det";

  Result run(const Globals& g) {
    auto need = [&](size_t k) {
      if (sizes.size() != k) throw InvalidInput(q.describe().substr(0, q.describe().find(' ')) + " takes " +
                                                std::to_string(k) + " size argument(s)");
    };
    switch (q.kind) {
      case LatinKind::square:
      case LatinKind::cube:
      case LatinKind::admissible_table:
        need(1);
        q.n = sizes[0];
        break;
      case LatinKind::annulus:
        need(2);
        q.m = sizes[0];
        q.d = sizes[1];
        break;
    }
    if (weighting == "det") {
      q.weighting = TableWeighting::det;
    } else if (weighting == "per") {
      q.weighting = TableWeighting::per;
    } else {
      throw InvalidInput("weighting must be det or per");
    }
    if ((q.kind == LatinKind::cube || q.kind == LatinKind::admissible_table) && q.n >= 3 && !g.has_budget()) {
      throw NeedBudget(q.describe());
    }
    LatinOptions opts;
    opts.symmetry_reduction = !g.no_symmetry;
    opts.search = g.search();
    Result r;
    r.value = signed_count(q, opts).get_str();
    r.meta["query"] = q.describe();
    r.meta["symmetry_reduction"] = opts.symmetry_reduction;
    return r;
  }
};

// ---- report helpers -------------------------------------------------------

void add_period(Result& r, const PeriodReport& p) {
  r.value = std::to_string(p.a);
  r.meta["object"] = p.object.name();
  r.meta["a"] = std::to_string(p.a);
  if (p.a_reduced) r.meta["a_reduced"] = std::to_string(*p.a_reduced);
  r.meta["b"] = std::to_string(p.b);
  r.meta["source"] = p.source;
  r.lines = {{"object", p.object.name()}, {"a", std::to_string(p.a)}};
  if (p.a_reduced) r.lines.emplace_back("a_reduced", std::to_string(*p.a_reduced));
  r.lines.emplace_back("b", std::to_string(p.b));
  r.lines.emplace_back("source", p.source);
}

json degree_json(const MinDegreeReport& d) {
  json j;
  j["object"] = d.object.name();
  j["b"] = d.b ? json(std::to_string(*d.b)) : json("infinite");
  j["e_lower"] = d.e_lower.get_str();
  j["e_exact"] = d.e_exact ? json(d.e_exact->get_str()) : json(nullptr);
  j["verdict"] = d.verdict;
  j["evaluation"] = d.evaluation;
  j["notes"] = d.notes;
  return j;
}

void degree_lines(Result& r, const MinDegreeReport& d) {
  r.lines.emplace_back("object", d.object.name());
  r.lines.emplace_back("b", d.b ? std::to_string(*d.b) : "infinite");
  r.lines.emplace_back("e_lower", d.e_lower.get_str());
  if (d.e_exact) r.lines.emplace_back("e", d.e_exact->get_str());
  r.lines.emplace_back("verdict", d.verdict);
  if (!d.evaluation.empty()) r.lines.emplace_back("evaluation", d.evaluation);
  for (const auto& n : d.notes) r.lines.emplace_back("note", n);
}

std::string index_str(const Index& a) { return join(a, " "); }

void add_certificate(Result& r, const SupportCertificate& c, bool verified) {
  r.value = c.holds ? "holds" : "fails";
  json wit = json::array();
  for (const auto& [a, q] : c.witness) wit.push_back({{"index", index_str(a)}, {"coefficient", to_string(q)}});
  json sep = json::array();
  for (const auto& f : c.separator) sep.push_back(join_str(f));
  r.meta["witness"] = wit;
  r.meta["separator"] = sep;
  r.meta["reductive_condition"] = c.reductive_condition;
  r.meta["verified"] = verified;
  r.lines.emplace_back("condition", r.value);
  for (const auto& [a, q] : c.witness) r.lines.emplace_back("witness", index_str(a) + " : " + to_string(q));
  for (size_t i = 0; i < c.separator.size(); ++i) {
    r.lines.emplace_back("separator " + std::to_string(i + 1), join_str(c.separator[i]));
  }
  r.lines.emplace_back("reductive_condition", c.reductive_condition);
  r.lines.emplace_back("verified", verified ? "yes" : "no");
}

int handle(const std::function<Result(const Globals&)>& fn, const Globals& g, std::ostream& out,
           std::ostream& err) {
  try {
    print(fn(g), g, out);
    return ok;
  } catch (const BudgetExceeded& e) {
    err << "gct: budget exhausted: " << e.what();
    if (!g.checkpoint.empty()) err << " (completed subtrees in " << g.checkpoint << ")";
    err << "\n";
    return budget_exhausted;
  } catch (const InvalidInput& e) {
    err << "gct: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    err << "gct: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact SL-invariants, signed Latin counts, Kronecker coefficients and degree monoids", "gct"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--budget", g.budget, "time budget in seconds")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--checkpoint", g.checkpoint, "subtree checkpoint file for resumable searches");
  app.add_flag("--no-symmetry", g.no_symmetry, "disable symbol-relabeling reduction in counts");

  std::function<Result(const Globals&)> action;

  // invariant
  auto* inv = app.add_subcommand("invariant", "evaluate the fundamental invariant of a form or tensor");
  inv->require_subcommand(1);
  InvariantFormCmd inv_form;
  auto* invf = inv->add_subcommand("form", "P_{D,m}, P_D or the power-sum tableau invariant");
  inv_form.obj.add(invf);
  invf->add_option("--file", inv_form.file, "form file");
  invf->add_option("--invariant", inv_form.which, "auto, generic, cyclic, power-sum-tableau");
  invf->add_option("--engine", inv_form.engine, "auto, by-factor, by-column");
  invf->add_flag("--relabel-symmetry", inv_form.relabel, "fix the first permutation (relabel-invariant inputs)");
  invf->callback([&] { action = [&](const Globals& gg) { return inv_form.run(gg); }; });
  InvariantTensorCmd inv_tensor;
  auto* invt = inv->add_subcommand("tensor", "F_n or its noncubic variant");
  inv_tensor.obj.add(invt);
  invt->add_option("--file", inv_tensor.file, "tensor file");
  invt->add_option("--format", inv_tensor.format, "n1,n2,n3 for noncubic formats")->delimiter(',');
  invt->add_flag("--relabel-symmetry", inv_tensor.relabel, "fix the first x-slice (relabel-invariant inputs)");
  invt->callback([&] { action = [&](const Globals& gg) { return inv_tensor.run(gg); }; });

  // eval-tableau
  EvalTableauCmd evt;
  auto* evs = app.add_subcommand("eval-tableau", "evaluate P_T for a tableau file");
  evs->add_option("--tableau", evt.tableau_file, "tableau file")->required();
  evs->add_option("--tensor", evt.tensor_file, "tensor file");
  evs->add_option("--form", evt.form_file, "form file");
  evt.obj.add(evs);
  evs->add_flag("--relabel-symmetry", evt.relabel, "fix the first permutation (relabel-invariant inputs)");
  evs->callback([&] { action = [&](const Globals& gg) { return evt.run(gg); }; });

  // count
  auto* cnt = app.add_subcommand("count", "signed combinatorial counts");
  cnt->require_subcommand(1);
  CountCmd count_cmd;
  auto add_count = [&](const char* name, LatinKind kind, const char* help) {
    auto* s = cnt->add_subcommand(name, help);
    s->add_option("sizes", count_cmd.sizes, "size parameters")->required();
    if (kind == LatinKind::admissible_table) s->add_option("--weighting", count_cmd.weighting, "det or per");
    s->callback([&, kind] {
      count_cmd.q.kind = kind;
      action = [&](const Globals& gg) { return count_cmd.run(gg); };
    });
  };
  add_count("latin-squares", LatinKind::square, "column-even minus column-odd Latin squares: N");
  add_count("latin-annuli", LatinKind::annulus, "signed Latin annuli: M D");
  add_count("latin-cubes", LatinKind::cube, "even minus odd Latin cubes: N");
  add_count("admissible-tables", LatinKind::admissible_table, "signed admissible tables: N");

  // kronecker
  std::vector<std::string> kparts;
  auto* kr = app.add_subcommand("kronecker", "Kronecker coefficient of three partitions");
  kr->add_option("partitions", kparts, "three partitions such as 3,3,3")->required()->expected(3);
  kr->callback([&] {
    action = [&](const Globals& gg) {
      Partition a = parse_partition(kparts[0]), b = parse_partition(kparts[1]), c = parse_partition(kparts[2]);
      Result r;
      r.value = kronecker(a, b, c, gg.search()).get_str();
      r.meta["partitions"] = {a.to_string(), b.to_string(), c.to_string()};
      r.meta["N"] = a.size();
      return r;
    };
  });

  // krect
  int km = 0, kdelta = -1, kdelta_max = -1;
  auto* kre = app.add_subcommand("krect", "k_m(delta) for three m x delta rectangles");
  kre->add_option("--m", km, "rows")->required();
  auto* kd = kre->add_option("--delta", kdelta, "columns");
  auto* kdm = kre->add_option("--delta-max", kdelta_max, "table for delta = 0..delta-max");
  kd->excludes(kdm);
  kre->callback([&] {
    action = [&](const Globals& gg) {
      if ((kdelta < 0) == (kdelta_max < 0)) throw InvalidInput("give --delta or --delta-max");
      Result r;
      r.meta["m"] = km;
      if (kdelta >= 0) {
        r.value = k_rect(km, kdelta, gg.search()).get_str();
        r.meta["delta"] = kdelta;
        return r;
      }
      json table = json::array();
      for (int d = 0; d <= kdelta_max; ++d) {
        std::string k = k_rect(km, d, gg.search()).get_str();
        table.push_back(k);
        r.lines.emplace_back("delta " + std::to_string(d) + " k", k);
      }
      r.value = table.back();
      r.table = true;
      r.meta["table"] = table;
      return r;
    };
  });

  // monoid
  int mm = 0, mdm = 12;
  auto* mon = app.add_subcommand("monoid", "positivity set and gaps of k_m");
  mon->add_option("--m", mm, "rows")->required();
  mon->add_option("--delta-max", mdm, "scan delta = 0..delta-max");
  mon->callback([&] {
    action = [&](const Globals& gg) {
      MonoidReport rep = exponent_monoid(mm, mdm, gg.search());
      Result r;
      r.value = rep.e_prime ? std::to_string(*rep.e_prime) : "none";
      r.meta["m"] = rep.m;
      r.meta["delta_max"] = rep.delta_max;
      json vals = json::array();
      for (const auto& v : rep.values) vals.push_back(v.get_str());
      r.meta["values"] = vals;
      r.meta["positive"] = rep.positive;
      r.meta["gaps"] = rep.gaps;
      r.meta["e_prime"] = rep.e_prime ? json(*rep.e_prime) : json(nullptr);
      r.meta["gcd"] = rep.gcd;
      r.meta["note"] = rep.note;
      r.lines = {{"m", std::to_string(rep.m)},
                 {"delta_max", std::to_string(rep.delta_max)},
                 {"values", join_str(rep.values)},
                 {"positive", join_str(rep.positive)},
                 {"gaps", join_str(rep.gaps)},
                 {"e_prime", r.value},
                 {"gcd", std::to_string(rep.gcd)}};
      if (!rep.note.empty()) r.lines.emplace_back("note", rep.note);
      return r;
    };
  });

  // pleth-bound
  std::string plambda;
  int pD = 0, pm = 0, pd = 0;
  auto* pl = app.add_subcommand("pleth-bound", "upper bound for plethysm coefficients (odd D)");
  pl->add_option("--lambda", plambda, "partition of D*d");
  pl->add_option("--D", pD, "odd degree")->required();
  pl->add_option("--m", pm, "rectangle rows for the SL-invariant bound");
  pl->add_option("--d", pd, "degree d")->required();
  pl->callback([&] {
    action = [&](const Globals&) {
      if (plambda.empty() == (pm == 0)) throw InvalidInput("give exactly one of --lambda or --m");
      Result r;
      if (!plambda.empty()) {
        Partition lam = parse_partition(plambda);
        r.value = pleth_upper_bound(lam, pD, pd).get_str();
        r.meta["lambda"] = lam.to_string();
      } else {
        r.value = sl_invariant_bound(pD, pm, pd).get_str();
        r.meta["m"] = pm;
      }
      r.meta["D"] = pD;
      r.meta["d"] = pd;
      return r;
    };
  });

  // periods, min-degree, normality
  ObjectArgs per_obj, deg_obj, nor_obj;
  auto* per = app.add_subcommand("periods", "stabilizer and degree periods of a named object");
  per_obj.add(per);
  per->callback([&] {
    action = [&](const Globals&) {
      Result r;
      add_period(r, periods(per_obj.object()));
      return r;
    };
  });
  auto* deg = app.add_subcommand("min-degree", "minimal degree of an SL-invariant on the orbit closure");
  deg_obj.add(deg);
  deg->callback([&] {
    action = [&](const Globals& gg) {
      MinDegreeReport d = minimal_degree_report(deg_obj.object(), gg.report_search());
      Result r;
      r.value = d.e_exact ? d.e_exact->get_str() : ">=" + d.e_lower.get_str();
      r.meta = degree_json(d);
      degree_lines(r, d);
      return r;
    };
  });
  auto* nor = app.add_subcommand("normality", "non-normality flag of the orbit closure");
  nor_obj.add(nor);
  nor->callback([&] {
    action = [&](const Globals& gg) {
      NormalityReport n = nonnormality_flag(nor_obj.object(), gg.report_search());
      Result r;
      r.value = normality_name(n.flag);
      r.meta["flag"] = r.value;
      r.meta["reason"] = n.reason;
      r.meta["degree"] = degree_json(n.degree);
      r.lines = {{"flag", r.value}, {"reason", n.reason}};
      degree_lines(r, n.degree);
      return r;
    };
  });

  // polystable
  auto* ps = app.add_subcommand("polystable", "support condition for polystability");
  ps->require_subcommand(1);
  ObjectArgs psf_obj, pst_obj;
  std::string psf_file, pst_file;
  auto* psf = ps->add_subcommand("form", "cone of the support contains (1,...,1)");
  psf_obj.add(psf);
  psf->add_option("--file", psf_file, "form file");
  psf->callback([&] {
    action = [&](const Globals&) {
      Result r;
      if (!psf_file.empty()) {
        SparseForm f = parse_file(psf_file, [](const std::string& t) { return parse_form(t); });
        auto c = polystable_form_support(f);
        add_certificate(r, c, verify_certificate(f, c));
        r.meta["object"] = "form from " + psf_file;
      } else {
        NamedObject o = psf_obj.object();
        if (!o.is_form()) throw InvalidInput("--kind " + psf_obj.kind + " is not a form");
        auto c = polystable_named(o);
        add_certificate(r, c, verify_certificate(named_form(o), c));
        r.meta["object"] = o.name();
      }
      return r;
    };
  });
  auto* pst = ps->add_subcommand("tensor", "support carries a distribution with uniform marginals");
  pst_obj.add(pst);
  pst->add_option("--file", pst_file, "tensor file");
  pst->callback([&] {
    action = [&](const Globals&) {
      Result r;
      if (!pst_file.empty()) {
        SparseTensor t = parse_file(pst_file, [](const std::string& s) { return parse_tensor(s); });
        auto c = polystable_tensor_support(t);
        add_certificate(r, c, verify_certificate(t, c));
        r.meta["object"] = "tensor from " + pst_file;
      } else {
        NamedObject o = pst_obj.object();
        if (o.is_form()) throw InvalidInput("--kind " + pst_obj.kind + " is not a tensor");
        auto c = polystable_named(o);
        add_certificate(r, c, verify_certificate(named_tensor(o), c));
        r.meta["object"] = o.name();
      }
      return r;
    };
  });

  // semigroup
  std::vector<long> gens;
  auto* sg = app.add_subcommand("semigroup", "gaps and Frobenius number of a numerical semigroup");
  sg->add_option("generators", gens, "positive generators")->required()->check(CLI::PositiveNumber);
  sg->callback([&] {
    action = [&](const Globals&) {
      SemigroupReport s = semigroup_report(gens);
      Result r;
      r.meta["generators"] = s.generators;
      r.meta["numerical"] = s.numerical;
      r.meta["gcd"] = s.gcd;
      if (s.numerical) {
        r.value = std::to_string(*s.frobenius);
        r.meta["gaps"] = s.gaps;
        r.meta["frobenius"] = *s.frobenius;
        r.lines = {{"numerical", "yes"}, {"gaps", join_str(s.gaps)}, {"frobenius", r.value}};
      } else {
        r.value = "infinite";
        r.meta["gaps"] = "all n not divisible by " + std::to_string(s.gcd);
        r.meta["frobenius"] = nullptr;
        r.lines = {{"numerical", "no"},
                   {"gcd", std::to_string(s.gcd)},
                   {"gaps", "all n not divisible by " + std::to_string(s.gcd)},
                   {"frobenius", "infinite"}};
      }
      return r;
    };
  });

  // First bare word is the verb.
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--budget" || a == "--threads" || a == "--checkpoint") {
      ++i;
      continue;
    }
    if (a.rfind("-", 0) == 0) continue;
    if (!app.get_subcommand_no_throw(a)) {
      err << "gct: unknown verb '" << a << "'\n";
      return bad_input;
    }
    break;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }
  if (!action) {
    err << "gct: no command\n";
    return bad_input;
  }
  return handle(action, g, out, err);
}

}  // namespace gct::cli
