#include "purimetry/scenario.hpp"
#include "purimetry/types.hpp"

#include <cstring>
#include <exception>
#include <iostream>

namespace {

void print_usage() {
    std::cout << purimetry::kToolVersion << "\n"
              << "usage: purimetry <scenario> [--key value]... [--config path] [--out path] "
                 "[--svg path]\n\nscenarios:\n";
    for (const std::string& name : purimetry::scenario_names()) std::cout << "  " << name << "\n";
    std::cout << "\nAngles accept literal numbers or pi tokens (pi, 0.5pi, -2pi).\n"
              << "Config files hold one 'key = value' per line; flags take precedence.\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::strcmp(argv[1], "--help") == 0 || std::strcmp(argv[1], "-h") == 0) {
        print_usage();
        return argc < 2 ? 2 : 0;
    }
    try {
        const purimetry::ScenarioConfig config = purimetry::parse_config(argc, argv);
        purimetry::run_scenario(config);
        return 0;
    } catch (const purimetry::ConfigError& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 2;
    } catch (const purimetry::BudgetError& error) {
        std::cerr << "resource budget error: " << error.what() << "\n";
        return 3;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 4;
    }
}
