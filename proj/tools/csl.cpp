#include <iostream>
#include <string>
#include <vector>

#include "csl/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bool json = false;
    for (auto& a : args) json = json || a == "--json";
    csl::RunResult res = csl::run(args);
    std::cout << (json ? res.json + "\n" : res.text);
    return res.exit_code;
}
