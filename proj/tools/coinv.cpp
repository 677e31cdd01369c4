#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "coinv/cli.hpp"

int main(int argc, char** argv) {
  using coinv::cli::Format;
  using coinv::cli::JobSpec;

  CLI::App app{"Ranks, Chern classes and F-nef checks for sheaves of coinvariants"};
  app.require_subcommand(1);

  JobSpec job;
  std::string labels;
  std::string format = "table";
  const std::map<std::string, Format> formats{{"table", Format::Table}, {"machine", Format::Machine}};

  auto common = [&](CLI::App* sub, bool with_labels) {
    sub->add_option("-m,--model", job.model, "Model expression, e.g. 'ising', 'lattice:8 x holomorphic:8'");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "machine"}));
    if (with_labels) {
      sub->add_option("-g,--genus", job.genus, "Genus")->check(CLI::NonNegativeNumber);
      sub->add_option("-l,--labels", labels, "Comma separated module labels; 'x^k' repeats");
      sub->add_option("-w,--workers", job.workers, "Worker threads")->check(CLI::PositiveNumber);
    }
  };

  struct Command {
    const char* name;
    const char* help;
    bool labels;
  };
  const Command commands[] = {
      {"rank", "Rank of the sheaf of coinvariants", true},
      {"c1", "First Chern class in the lambda/psi/delta basis", true},
      {"degree4", "Degree of c1 on M_{0,4}", true},
      {"fnef", "Intersect c1 with every F-curve on M_{0,n}", true},
      {"integrality", "Sum of conformal dimensions and its integrality", true},
      {"report", "Necessary conditions for global generation", true},
      {"validate", "Check the fusion model laws", false},
      {"zhu-dim", "Lowest weight space dimension of a lattice module", false},
      {"zhu-series", "Graded dimensions of a lattice module as CSV", false},
      {"spectrum", "Minimal series central charge and weights", false},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub, c.labels);
    const std::string name = c.name;
    if (name == "fnef") sub->add_flag("--symmetric", job.symmetric, "Use the S_n-invariant composition scan");
    if (name == "zhu-dim" || name == "zhu-series") {
      sub->add_option("--label", job.label, "Coset label j of lattice:<m>");
      sub->add_option("--gram", job.gram, "Gram matrix rows ';'-separated, e.g. '2,-1;-1,2'");
      sub->add_option("--coset", job.coset, "Coset vector for --gram, e.g. '1/3,2/3'");
    }
    if (name == "zhu-series") sub->add_option("-N,--nmax", job.n_max, "Highest degree")->check(CLI::NonNegativeNumber);
    if (name == "spectrum") {
      sub->add_option("-p", job.p, "p")->required();
      sub->add_option("-q", job.q, "q")->required();
    }
    sub->callback([&job, name] { job.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : coinv::cli::kExitInputError;
  }

  job.format = formats.at(format);
  try {
    job.labels = coinv::cli::split_labels(labels);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return coinv::cli::kExitInputError;
  }
  return coinv::cli::run(job, std::cout, std::cerr);
}
