#include <iostream>
#include <string>
#include <vector>

#include "pinchcert/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto res = pinchcert::cli::run_cli(args, pinchcert::cli::environment_from_process());
    std::cout << res.out << std::flush;
    std::cerr << res.err << std::flush;
    return res.exit_code;
}
