#include <iostream>

#include "jnbellman/cli.hpp"

int main(int argc, char** argv)
{
  return jnb::cli::run(argc, argv, std::cout, std::cerr);
}
