// Command-line front end: one instance file, one pipeline.
#include <iostream>

#include "CLI11.hpp"
#include "adelic/instance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Adelic algebras over the projective line: separability, local decompositions, content, covers"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  adelic::RunOptions opt;
  std::string path, place;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--precision", opt.precision, "Series precision N (default 16)");
  app.add_option("--bound", opt.bound, "Witness search bound (default 3)");
  app.add_option("--field", opt.field, "Base field, e.g. F_5, F_5^2, Q (overrides the file)");

  auto* sep = app.add_subcommand("separable", "Separability certificate, bad set and place classes");
  auto* dec = app.add_subcommand("decompose", "Local factors of p at a place");
  auto* con = app.add_subcommand("content", "Content of a unit: valuation sum and lattice index");
  auto* cov = app.add_subcommand("verify-cover", "Discreteness verdict and product formula for an embedding");
  for (auto* s : {sep, dec, con, cov}) s->add_option("file", path, "Instance file")->required();
  dec->add_option("--place", place, "Place such as @1 or @inf (overrides the file)");

  CLI11_PARSE(app, argc, argv);
  if (!place.empty()) opt.place = place;

  adelic::Report rep;
  try {
    const adelic::Instance inst = adelic::load_instance(path);
    if (*sep) rep = adelic::run_separable(inst, opt);
    else if (*dec) rep = adelic::run_decompose(inst, opt);
    else if (*con) rep = adelic::run_content(inst, opt);
    else rep = adelic::run_verify_cover(inst, opt);
  } catch (const std::exception& e) {
    rep = adelic::error_report(e);
    if (as_json)
      std::cout << rep.json.dump(2) << "\n";
    else
      std::cerr << rep.text;
    return rep.exit_code;
  }
  if (as_json)
    std::cout << rep.json.dump(2) << "\n";
  else
    std::cout << rep.text;
  return rep.exit_code;
}
