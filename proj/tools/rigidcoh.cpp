#include <iostream>

#include "corpus.hpp"
#include "rigidcoh/cli/app.hpp"

int main(int argc, char** argv) {
    return rigidcoh::cli::main_entry(argc, argv, rigidcoh::cli::bundled_corpus, std::cout, std::cerr);
}
