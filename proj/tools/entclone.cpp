#include "entclone/cli.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
  try {
    return entclone::cli::main_with_args({argv + 1, argv + argc}, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "entclone: " << e.what() << "\n";
    return 2;
  }
}
