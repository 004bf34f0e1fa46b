#include <iostream>

#include <CLI11.hpp>

#include "fpmn/driver.hpp"

int main(int argc, char** argv) {
  fpmn::Job job;
  CLI::App app{"Finite presentability of F/[M,N] for normal closures M, N of a free group"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", job.input, what)->required();
    sub->add_option("--max-cosets", job.max_cosets, "coset enumeration bound");
    sub->add_option("--max-rounds", job.max_rounds, "saturation rounds");
    sub->add_flag("--json", job.json, "emit a JSON report");
  };

  auto* index = app.add_subcommand("index", "decide [F : MN]");
  common(index, "presentation file");

  auto* present = app.add_subcommand("present", "finite presentation of F/[M,N]");
  common(present, "presentation file");

  auto* certify = app.add_subcommand("certify", "certificate for [m^f, n] in ncl(R)");
  common(certify, "presentation file");
  certify->add_option("--m", job.m, "M-side generator: index or word");
  certify->add_option("--f", job.f, "conjugating word");
  certify->add_option("--n", job.n, "N-side generator: index or word");
  certify->add_option("--budget", job.max_steps, "maximum certificate steps");
  certify->add_option("--random", job.random, "certify this many seeded random triples");
  certify->add_option("--max-length", job.max_length, "longest random f");
  certify->add_option("--seed", job.seed, "random seed");
  certify->add_option("--out", job.out, "write the certificate JSON here");

  auto* cls = app.add_subcommand("class", "class c of M in the lower central series of MN");
  common(cls, "presentation file");
  cls->add_option("--backend", job.backend, "table | abelian | free:<map>");

  auto* witness = app.add_subcommand("witness", "element of [M,N] outside ncl(Y)");
  common(witness, "presentation file");
  witness->add_option("--Y", job.y, "candidate normal generators of [M,N]")->required();
  witness->add_option("--backend", job.backend, "abelian | free:<map>");
  witness->add_option("--budget", job.budget, "shift candidates to try");
  witness->add_option("--out", job.out, "write the witness JSON here");

  auto* recheck = app.add_subcommand("recheck", "re-validate a certificate or witness file");
  common(recheck, "JSON artifact");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : fpmn::exit_input;
  }
  job.command = app.get_subcommands().front()->get_name();
  return fpmn::run(job, std::cout);
}
