#include "ubp/cli/app.hpp"

int main(int argc, char** argv) {
  return ubp::cli::run(argc, argv);
}
