// CLI entry point; subcommands are filled in as the library grows.
#include <cstdio>

int main() {
    std::fprintf(stderr, "normforge: no subcommand given\n");
    return 2;
}
