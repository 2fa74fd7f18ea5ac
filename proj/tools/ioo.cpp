#include "ioo/cli.hpp"
#include "ioo/store.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    ioo::cli::Environment env;
    if (const char* store = std::getenv(ioo::store::kStoreEnvVar)) {
        env.store_path = store;
    }
    return ioo::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, env);
}
