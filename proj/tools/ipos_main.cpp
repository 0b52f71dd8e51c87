#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iposets/algebra.hpp"
#include "iposets/census.hpp"
#include "iposets/enumerate.hpp"
#include "iposets/forbidden.hpp"
#include "iposets/io.hpp"
#include "iposets/iposet.hpp"
#include "iposets/recognition.hpp"

namespace {

using namespace iposets;

void emit(const Iposet& p, const std::string& out_path) {
  if (out_path.empty()) {
    write_ipos(std::cout, p);
  } else {
    write_ipos_file(out_path, p);
  }
}

int predicate(bool value) {
  std::cout << (value ? "true" : "false") << '\n';
  return value ? 0 : 1;
}

std::set<CensusClass> parse_classes(const std::string& spec) {
  std::set<CensusClass> classes;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) {
      continue;
    }
    std::optional<CensusClass> c = census_class_from_name(item);
    if (!c) {
      throw_error(Errc::ParseError, "unknown census class '" + item +
                                        "' (expected P, SP, IO, GP, IP, GPI)");
    }
    classes.insert(*c);
  }
  if (classes.empty()) {
    throw_error(Errc::ParseError, "empty census class list");
  }
  return classes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Posets with interfaces: composition, recognition, census"};
  app.require_subcommand(1);
  int rc = 0;

  std::string validate_file;
  CLI::App* validate = app.add_subcommand(
      "validate", "Parse an .ipos file and check its invariants");
  validate->add_option("file", validate_file, ".ipos file")->required();
  validate->callback([&] { read_ipos_file(validate_file); });

  std::string glue_a, glue_b, glue_out;
  CLI::App* glue_cmd =
      app.add_subcommand("glue", "Glue two iposets along their interfaces");
  glue_cmd->add_option("first", glue_a, "left operand (.ipos)")->required();
  glue_cmd->add_option("second", glue_b, "right operand (.ipos)")->required();
  glue_cmd->add_option("-o,--output", glue_out, "output file (default stdout)");
  glue_cmd->callback([&] {
    emit(glue(read_ipos_file(glue_a), read_ipos_file(glue_b)), glue_out);
  });

  std::string par_a, par_b, par_out;
  CLI::App* par_cmd =
      app.add_subcommand("par", "Parallel composition of two iposets");
  par_cmd->add_option("first", par_a, "left operand (.ipos)")->required();
  par_cmd->add_option("second", par_b, "right operand (.ipos)")->required();
  par_cmd->add_option("-o,--output", par_out, "output file (default stdout)");
  par_cmd->callback([&] {
    emit(par(read_ipos_file(par_a), read_ipos_file(par_b)), par_out);
  });

  std::string op_file;
  CLI::App* op_cmd =
      app.add_subcommand("op", "Opposite iposet (order reversed, interfaces "
                               "swapped), written to stdout");
  op_cmd->add_option("file", op_file, ".ipos file")->required();
  op_cmd->callback(
      [&] { write_ipos(std::cout, read_ipos_file(op_file).opposite()); });

  std::string iso_a, iso_b;
  CLI::App* iso_cmd =
      app.add_subcommand("iso", "Test two iposets for isomorphism");
  iso_cmd->add_option("first", iso_a, ".ipos file")->required();
  iso_cmd->add_option("second", iso_b, ".ipos file")->required();
  iso_cmd->callback([&] {
    rc = predicate(
        is_isomorphic(read_ipos_file(iso_a), read_ipos_file(iso_b))
            .has_value());
  });

  std::string sub_a, sub_b;
  CLI::App* sub_cmd = app.add_subcommand(
      "subsume", "Test whether the first iposet is subsumed by the second");
  sub_cmd->add_option("first", sub_a, ".ipos file")->required();
  sub_cmd->add_option("second", sub_b, ".ipos file")->required();
  sub_cmd->callback([&] {
    rc = predicate(
        subsumes(read_ipos_file(sub_a), read_ipos_file(sub_b)).has_value());
  });

  std::string rec_class, rec_file;
  CLI::App* rec_cmd =
      app.add_subcommand("recognize", "Test membership in a poset class");
  rec_cmd
      ->add_option("--class", rec_class,
                   "one of sp, interval, step, gp, consistent")
      ->required()
      ->check(CLI::IsMember({"sp", "interval", "step", "gp", "consistent"}));
  rec_cmd->add_option("file", rec_file, ".ipos file")->required();
  rec_cmd->callback([&] {
    const Iposet p = read_ipos_file(rec_file);
    bool value = false;
    if (rec_class == "sp") {
      value = is_sp(p);
    } else if (rec_class == "interval") {
      value = is_interval_order(p);
    } else if (rec_class == "step") {
      value = is_step_sequence(p);
    } else if (rec_class == "gp") {
      value = is_gp(p);
    } else {
      value = p.is_interface_consistent();
    }
    rc = predicate(value);
  });

  std::string level_file;
  CLI::App* level_cmd = app.add_subcommand(
      "level", "Least hierarchy level of a gluing-parallel iposet ('none' "
               "and exit 1 if not gluing-parallel)");
  level_cmd->add_option("file", level_file, ".ipos file")->required();
  level_cmd->callback([&] {
    std::optional<int> level = gp_level(read_ipos_file(level_file));
    if (level) {
      std::cout << *level << '\n';
    } else {
      std::cout << "none" << '\n';
      rc = 1;
    }
  });

  std::string dec_file;
  CLI::App* dec_cmd = app.add_subcommand(
      "decompose", "Gluing-parallel certificate term ('none' and exit 1 if "
                   "not gluing-parallel)");
  dec_cmd->add_option("file", dec_file, ".ipos file")->required();
  dec_cmd->callback([&] {
    std::optional<GpTerm> term = gp_term(read_ipos_file(dec_file));
    if (term) {
      std::cout << to_string(*term) << '\n';
    } else {
      std::cout << "none" << '\n';
      rc = 1;
    }
  });

  CensusOptions census_options;
  std::string census_classes;
  CLI::App* census_cmd =
      app.add_subcommand("census", "Count isomorphism classes per size, as "
                                   "TSV on stdout");
  census_cmd->add_option("--max-n", census_options.max_n, "largest size")
      ->required();
  census_cmd->add_option("--classes", census_classes,
                         "comma-separated subset of P,SP,IO,GP,IP,GPI "
                         "(default all)");
  census_cmd->add_option("--jobs", census_options.jobs, "worker threads");
  census_cmd->add_flag("--extended", census_options.extended,
                       "raise the size caps (expect long runtimes)");
  census_cmd->callback([&] {
    if (!census_classes.empty()) {
      census_options.classes = parse_classes(census_classes);
    }
    write_census_tsv(std::cout, run_census(census_options));
  });

  int forbidden_max = 0;
  int forbidden_jobs = 1;
  bool forbidden_extended = false;
  CLI::App* forbidden_cmd = app.add_subcommand(
      "forbidden", "Mine minimal non-gluing-parallel posets, as .ipos "
                   "documents on stdout");
  forbidden_cmd->add_option("--max-points", forbidden_max, "largest size")
      ->required();
  forbidden_cmd->add_option("--jobs", forbidden_jobs, "worker threads");
  forbidden_cmd->add_flag("--extended", forbidden_extended,
                          "raise the size cap (expect long runtimes)");
  forbidden_cmd->callback([&] {
    bool first = true;
    for (const Iposet& p :
         minimal_forbidden(forbidden_max, forbidden_extended,
                           forbidden_jobs)) {
      if (!first) {
        std::cout << '\n';
      }
      first = false;
      write_ipos(std::cout, p);
    }
  });

  int witness_n = 0;
  std::string witness_out;
  CLI::App* witness_cmd = app.add_subcommand(
      "witness", "Separator witness poset for a hierarchy level");
  witness_cmd->add_option("n", witness_n, "level (1 to 5)")->required();
  witness_cmd->add_option("-o,--output", witness_out,
                          "output file (default stdout)");
  witness_cmd->callback([&] { emit(build_witness(witness_n), witness_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << "ipos: " << e.what() << '\n';
    return 2;
  } catch (const IposetError& e) {
    std::cerr << "ipos: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
