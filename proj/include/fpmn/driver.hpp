// Command router behind the fpmn executable. Each command writes a text or
// JSON report and returns the process exit code.

#ifndef FPMN_DRIVER_HPP_
#define FPMN_DRIVER_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coset.hpp"
#include "error.hpp"
#include "lemma1.hpp"
#include "nilpotent.hpp"
#include "oracle.hpp"
#include "parse.hpp"
#include "presentation.hpp"
#include "serialize.hpp"
#include "wreath.hpp"
#include "words.hpp"

namespace fpmn {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_undecided = 2,
  exit_verification = 3,
  exit_limit = 4,
  exit_input = 5,
};

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::input:
    case ErrorKind::refused: return exit_input;
    case ErrorKind::limit: return exit_limit;
    case ErrorKind::verification: return exit_verification;
    case ErrorKind::internal: return exit_internal;
  }
  return exit_internal;
}

struct Job {
  std::string command;  // index, present, certify, class, witness, recheck
  std::string input;    // presentation file, or a JSON artifact for recheck
  std::size_t max_cosets = 100000;
  std::size_t max_rounds = 6;
  std::size_t budget = 100000;       // shift candidates for witness
  std::size_t max_steps = 5000000;   // certificate size bound
  std::string backend;               // empty: table for class, abelian for witness
  bool json = false;
  std::uint64_t seed = 20240601;
  std::string out;                   // artifact file for certify / witness
  std::string y;                     // witness candidate set
  std::string m = "0", f = "1", n = "0";
  std::size_t random = 0;            // certify this many random triples instead
  std::size_t max_length = 16;       // of conjugators f in random mode

  void validate() const {
    static const std::vector<std::string> commands{"index", "present", "certify", "class", "witness", "recheck"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
      fail(ErrorKind::input, "cli", "unknown command '" + command + "'");
    if (max_cosets == 0 || max_rounds == 0 || budget == 0 || max_steps == 0)
      fail(ErrorKind::input, "cli", "limits must be positive");
  }
};

namespace impl {

struct Report {
  Json json;
  std::ostringstream text;
  int code = exit_ok;
};

inline std::string join(const std::vector<Word>& ws, const Alphabet& a, const char* sep = ", ") {
  std::string out;
  for (const Word& w : ws) {
    if (!out.empty())
      out += sep;
    out += to_string(w, a);
  }
  return out;
}

inline Json word_array(const std::vector<Word>& ws, const Alphabet& a) { return words_json(ws, a); }

inline EnumerationOptions enum_options(const Job& job) {
  EnumerationOptions o;
  o.max_cosets = job.max_cosets;
  return o;
}

inline SaturationOptions sat_options(const Job& job) {
  SaturationOptions o;
  o.max_rounds = job.max_rounds;
  return o;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f)
    fail(ErrorKind::input, "output", "cannot write " + path);
  f << content;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    fail(ErrorKind::input, "input", "cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, "input", path + ": " + e.what());
  }
}

inline void cmd_index(const Job& job, Report& r) {
  MNPresentation in = load_presentation(job.input);
  Presentation p = in.presentation();
  SmithForm s = abelianized_invariants(p);
  if (s.free_rank > 0) {
    r.json["index"] = "infinite";
    r.json["reason"] = "abelianization";
    r.json["free_rank"] = s.free_rank;
    r.text << "index: infinite (abelianization has free rank " << s.free_rank << ")\n";
    return;
  }
  CosetTable t = enumerate(p, enum_options(job));
  if (!t.complete()) {
    r.json["index"] = "undecided";
    r.json["free_rank"] = 0;
    r.json["max_cosets"] = job.max_cosets;
    r.text << "index: undecided (abelianization is finite; coset enumeration exceeded "
           << job.max_cosets << " cosets)\n";
    r.code = exit_undecided;
    return;
  }
  Transversal tr = transversal(t);
  r.json["index"] = t.size();
  r.json["transversal"] = word_array(tr.representatives, in.alphabet);
  r.text << "index: " << t.size() << "\n"
         << "transversal: " << join(tr.representatives, in.alphabet) << "\n";
}

inline std::string bracket(const Word& m, const Word& h, const Word& n, const Alphabet& a) {
  std::string ms = to_string(m, a);
  bool power = std::all_of(m.begin(), m.end(), [&](Letter l) { return l == m.front(); });
  if (!h.is_identity()) {
    std::string hs = to_string(h, a);
    ms = (power ? ms : "(" + ms + ")") + "^" + (h.size() == 1 ? hs : "(" + hs + ")");
  }
  return "[" + ms + ", " + to_string(n, a) + "]";
}

inline void cmd_present(const Job& job, Report& r) {
  MNPresentation in = load_presentation(job.input);
  SmithForm s = abelianized_invariants(in.presentation());
  if (s.free_rank > 0)
    fail(ErrorKind::refused, "present",
         "[F:MN] is infinite (abelianization has free rank " + std::to_string(s.free_rank) +
             "), so F/[M,N] is not finitely presentable; use `witness` to refute a candidate");
  Lemma1Context ctx = Lemma1Context::build(in, enum_options(job), sat_options(job));
  const Alphabet& a = in.alphabet;
  const RelatorSet& rs = ctx.relators;

  Json rels = Json::array();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    auto [m, k, n] = rs.origin[i];
    rels.push_back(Json{{"word", to_string(rs.relators[i], a)},
                        {"m", to_string(ctx.lifted.m_gens[m], a)},
                        {"h", to_string(ctx.transversal[k], a)},
                        {"n", to_string(ctx.lifted.n_gens[n], a)}});
  }
  std::string statement = "F/[M,N] = < ";
  for (std::size_t g = 0; g < a.size(); ++g)
    statement += (g ? ", " : "") + a.name(static_cast<std::uint32_t>(g));
  statement += " | " + (rs.size() ? join(rs.relators, a) : std::string("")) + " >";

  r.json["index"] = ctx.table.size();
  r.json["transversal"] = word_array(ctx.transversal.representatives, a);
  r.json["rounds"] = ctx.lifted.rounds;
  r.json["m_gens"] = word_array(ctx.lifted.m_gens, a);
  r.json["n_gens"] = word_array(ctx.lifted.n_gens, a);
  r.json["formal"] = rs.formal_count();
  r.json["distinct"] = rs.size();
  r.json["relators"] = std::move(rels);
  r.json["statement"] = statement;

  r.text << "index: " << ctx.table.size() << "\n"
         << "transversal: " << join(ctx.transversal.representatives, a) << "\n"
         << "rounds: " << ctx.lifted.rounds << "\n"
         << "m_gens: " << join(ctx.lifted.m_gens, a) << "\n"
         << "n_gens: " << join(ctx.lifted.n_gens, a) << "\n"
         << "relators: " << rs.size() << " distinct of " << rs.formal_count() << " formal\n";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    auto [m, k, n] = rs.origin[i];
    r.text << "  r" << i << " = "
           << bracket(ctx.lifted.m_gens[m], ctx.transversal[k], ctx.lifted.n_gens[n], a) << " = "
           << to_string(rs.relators[i], a) << "\n";
  }
  r.text << statement << "\n";
}

/// A generator selector: an index, or a word that must be one of `gens`.
inline std::size_t select(const std::string& spec, const std::vector<Word>& gens, const Alphabet& a,
                          const char* flag) {
  std::string t = trim(spec);
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    std::size_t i = std::stoul(t);
    if (i >= gens.size())
      fail(ErrorKind::input, "certify", std::string(flag) + " index " + t + " out of range (" +
                                            std::to_string(gens.size()) + " generators)");
    return i;
  }
  Word w = parse_word(t, a);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == w)
      return i;
  fail(ErrorKind::input, "certify", std::string(flag) + " " + to_string(w, a) +
                                        " is not a lifted generator (choose from " + join(gens, a) + ")");
}

inline void cmd_certify(const Job& job, Report& r) {
  MNPresentation in = load_presentation(job.input);
  Lemma1Context ctx = Lemma1Context::build(in, enum_options(job), sat_options(job));
  const Alphabet& a = in.alphabet;

  if (job.random > 0) {
    std::mt19937_64 rng(job.seed);
    std::uniform_int_distribution<std::size_t> pick_m(0, ctx.lifted.m_gens.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_n(0, ctx.lifted.n_gens.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_len(0, job.max_length);
    std::size_t verified = 0, total_steps = 0;
    for (std::size_t i = 0; i < job.random; ++i) {
      std::size_t m = pick_m(rng), n = pick_n(rng);
      Word f = random_word(rng, a.size(), pick_len(rng));
      Certificate c = derive_certificate(ctx, m, f, n, job.max_steps);
      total_steps += c.steps.size();
      if (verify_certificate(c, ctx.relators))
        ++verified;
    }
    r.json["seed"] = job.seed;
    r.json["triples"] = job.random;
    r.json["verified"] = verified;
    r.json["steps"] = total_steps;
    r.text << "certified " << verified << " of " << job.random << " random triples (seed " << job.seed
           << ", " << total_steps << " steps in total)\n";
    if (verified != job.random)
      r.code = exit_verification;
    return;
  }

  std::size_t m = select(job.m, ctx.lifted.m_gens, a, "--m");
  std::size_t n = select(job.n, ctx.lifted.n_gens, a, "--n");
  Word f = parse_word(job.f, a);
  CertificateDocument doc{in, ctx.relators.relators, ctx.lifted.m_gens[m], f, ctx.lifted.n_gens[n],
                          derive_certificate(ctx, m, f, n, job.max_steps)};
  bool ok = verify_certificate(doc.certificate, doc.relators);
  Json cert = to_json(doc);
  if (!job.out.empty())
    write_file(job.out, cert.dump(2) + "\n");
  r.json["verified"] = ok;
  r.json["steps"] = doc.certificate.steps.size();
  r.json["certificate"] = std::move(cert);
  r.text << "target: " << bracket(doc.m, doc.f, doc.n, a) << " = " << to_string(doc.certificate.target, a)
         << "\n"
         << "steps: " << doc.certificate.steps.size() << "\n"
         << "verified: " << (ok ? "yes" : "no") << "\n";
  if (!job.out.empty())
    r.text << "written: " << job.out << "\n";
  if (!ok)
    r.code = exit_verification;
}

inline void class_report(const ClassResult& c, const std::string& backend, Report& r) {
  r.json["backend"] = backend;
  r.json["class"] = c.c;
  r.json["swapped"] = c.swapped;
  r.json["degree_M"] = c.degree_m;
  r.json["degree_N"] = c.degree_n;
  r.text << "class: " << c.c << "\n"
         << "orientation: " << (c.swapped ? "swapped (N plays the role of M)" : "as given") << "\n"
         << "degree M: " << c.degree_m << "\n"
         << "degree N: " << c.degree_n << "\n"
         << "backend: " << backend << "\n";
}

inline void cmd_class(const Job& job, Report& r) {
  MNPresentation in = load_presentation(job.input);
  std::string backend = job.backend.empty() ? "table" : job.backend;
  if (backend == "table") {
    SmithForm s = abelianized_invariants(in.presentation());
    if (s.free_rank > 0)
      fail(ErrorKind::refused, "class",
           "[F:MN] is infinite, so there is no coset table; pass --backend abelian or free:<map>");
    CosetTable t = enumerate(in.presentation(), enum_options(job));
    t.require_complete("class");
    Transversal tr = transversal(t);
    SchreierBasis basis(t, tr);
    class_report(compute_class(in.m, in.n, [&](const Word& w) { return basis.rewrite(w); }), backend, r);
    return;
  }
  with_backend(backend, in.presentation(), [&](const auto& oracle) {
    class_report(compute_class(in.m, in.n, tail_rewriter(oracle, in.alphabet)), oracle.describe(), r);
    return 0;
  }, enum_options(job));
}

inline void witness_report(const Witness& w, Report& r) {
  const Alphabet& a = w.input.alphabet;
  std::string z;
  for (const ZEntry& e : w.z)
    z += (z.empty() ? "" : ", ") + e.key;
  r.json["witness"] = to_json(w);
  r.text << "backend: " << w.backend << "\n"
         << "class: " << w.c << (w.swapped ? " (swapped)" : "") << "\n"
         << "u: " << to_string(w.u, a) << "\n"
         << "v: " << to_string(w.v, a) << "\n"
         << "Z: {" << z << "}\n"
         << "shift g: " << w.g << "\n"
         << "f: " << to_string(w.f, a) << "\n"
         << "omega: " << to_string(w.omega, a) << "\n"
         << "u'' tail: " << w.u_tail << "\n"
         << "v tail: " << w.v_tail << "\n"
         << "check (i) distant: " << (w.verdict.distant ? "pass" : "fail") << "\n"
         << "check (ii) u nontrivial: " << (w.verdict.u_nontrivial ? "pass" : "fail") << "\n"
         << "check (iii) v nontrivial: " << (w.verdict.v_nontrivial ? "pass" : "fail") << "\n";
}

inline void cmd_witness(const Job& job, Report& r) {
  MNPresentation in = load_presentation(job.input);
  std::vector<Word> y = parse_word_list(job.y, in.alphabet);
  std::string backend = job.backend.empty() ? "abelian" : job.backend;
  WitnessOptions opt;
  opt.budget = job.budget;
  Witness w = with_backend(backend, in.presentation(), [&](const auto& oracle) {
    return theorem1_witness(in, y, oracle, opt);
  }, enum_options(job));
  if (!job.out.empty())
    write_file(job.out, to_json(w).dump(2) + "\n");
  witness_report(w, r);
  if (!job.out.empty())
    r.text << "written: " << job.out << "\n";
}

inline void cmd_recheck(const Job& job, Report& r) {
  Json doc = read_json_file(job.input);
  std::string kind = field<std::string>(doc, "kind");
  std::vector<std::string> problems;
  if (kind == "certificate") {
    CertificateDocument d = certificate_from_json(doc);
    problems = recheck_certificate(d, enum_options(job), sat_options(job));
  } else if (kind == "witness") {
    Witness w = witness_from_json(doc);
    problems = recheck_witness(w);
  } else {
    fail(ErrorKind::input, "recheck", "unknown artifact kind '" + kind + "'");
  }
  r.json["kind"] = kind;
  r.json["valid"] = problems.empty();
  r.json["problems"] = problems;
  r.text << kind << ": " << (problems.empty() ? "valid" : "INVALID") << "\n";
  for (const std::string& p : problems)
    r.text << "  " << p << "\n";
  if (!problems.empty())
    r.code = exit_verification;
}

} // namespace impl

/// Runs one job, writing its report to `out`. Errors become reports too.
inline int run(const Job& job, std::ostream& out) {
  impl::Report r;
  r.json = Json{{"command", job.command}, {"status", "ok"}};
  try {
    job.validate();
    if (job.command == "index")
      impl::cmd_index(job, r);
    else if (job.command == "present")
      impl::cmd_present(job, r);
    else if (job.command == "certify")
      impl::cmd_certify(job, r);
    else if (job.command == "class")
      impl::cmd_class(job, r);
    else if (job.command == "witness")
      impl::cmd_witness(job, r);
    else
      impl::cmd_recheck(job, r);
  } catch (const Error& e) {
    r.code = exit_code(e.kind());
    r.json = Json{{"command", job.command},
                  {"status", "error"},
                  {"error", Json{{"kind", to_string(e.kind())}, {"stage", e.stage()}, {"message", e.what()}}}};
    r.text.str("");
    r.text << "error [" << to_string(e.kind()) << "] " << e.what() << "\n";
  } catch (const std::exception& e) {
    r.code = exit_internal;
    r.json = Json{{"command", job.command},
                  {"status", "error"},
                  {"error", Json{{"kind", "internal"}, {"stage", "run"}, {"message", e.what()}}}};
    r.text.str("");
    r.text << "error [internal] " << e.what() << "\n";
  }
  if (r.code == exit_undecided)
    r.json["status"] = "undecided";
  else if (r.code != exit_ok && r.json["status"] == "ok")
    r.json["status"] = "failed";
  r.json["exit_code"] = r.code;
  if (job.json)
    out << r.json.dump(2) << "\n";
  else
    out << r.text.str();
  return r.code;
}

} // namespace fpmn

#endif // FPMN_DRIVER_HPP_
