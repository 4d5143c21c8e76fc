#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Invariants and classification of algebroid curves and hypersurface singularities"};
  std::string input = "-";
  algebroid::cli::Overrides ov;
  bool pretty = false;
  app.add_option("input", input, "request file, '-' for stdin");
  app.add_option("--precision", ov.precision, "series precision / working precision");
  app.add_option("--kmax", ov.kmax, "largest jet degree searched for dimensions");
  app.add_option("--jet", ov.jet, "jet degrees for tangent image dimensions, comma separated");
  app.add_option("--seed", ov.seed, "seed for randomized value maps");
  app.add_option("--samples", ov.samples, "parameter samples, e.g. \"0,1,2\" or \"(0,1),(1,1)\"");
  app.add_option("--field", ov.field, "field spec replacing the request's, e.g. \"char=3; ext=a:a^2+1\"");
  app.add_flag("--pretty", pretty, "indented JSON");
  app.add_flag("--json", "compact JSON (default)");
  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "cannot open " << input << "\n";
      return 1;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const algebroid::cli::Outcome out = algebroid::cli::run_text(text, ov);
  std::cout << algebroid::cli::render(out.doc, pretty) << "\n";
  return out.exit_code;
}
