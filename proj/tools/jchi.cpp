#include <cstdlib>
#include <iostream>

#include "jchi/cli.hpp"

int main(int argc, char** argv) {
    jchi::CliContext ctx;
    if (const char* p = std::getenv("JCHI_PRECISION"))
        ctx.precision_env = p;
    const jchi::CommandOutcome r = jchi::run(std::vector<std::string>(argv + 1, argv + argc), ctx);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
