// dicke — command-line front end

#include <iostream>

#include "dicke/io/cli.hpp"
#include "dicke/io/commands.hpp"

int main(int argc, char** argv) {
    const auto parsed = dicke::io::parse_command_line(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
        return parsed.exit_code;
    }
    return dicke::io::run_command(*parsed.config);
}
