#include <iostream>
#include <variant>

#include "novlab/run_config.hpp"
#include "novlab/runner.hpp"

int main(int argc, char** argv) {
  const novlab::ParseOutcome parsed = novlab::parse_args(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return novlab::run(std::get<novlab::RunConfig>(parsed), std::cout, std::cerr);
}
