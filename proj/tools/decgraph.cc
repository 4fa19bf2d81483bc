#include <decgraph/cli.hh>

#include <iostream>

auto main(int argc, char * argv[]) -> int
{
    return decgraph::run_cli({ argv, argv + argc }, std::cout, std::cerr);
}
