#include <iostream>

#include "cli/dispatch.hpp"

int main(int argc, char** argv) {
  try {
    auto backend = trisum::cli::make_library_backend();
    return trisum::cli::dispatch({argv + 1, argv + argc}, *backend, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return trisum::cli::kUsageOrError;
  }
}
