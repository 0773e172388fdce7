// Writes the synthetic test image used by the CLI shell test.
// Usage: make_fixture <out.png|out.ngrt> [height width channels]
#include "ngr/blas_tuning.hpp"
#include "ngr/degrade.hpp"
#include "ngr/io.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    ngr::blas::ensure_tuned(argv);
    if (argc < 2) {
        std::cerr << "usage: make_fixture <out> [h w c]\n";
        return 2;
    }
    const int h = argc > 2 ? std::atoi(argv[2]) : 32;
    const int w = argc > 3 ? std::atoi(argv[3]) : 32;
    const int c = argc > 4 ? std::atoi(argv[4]) : 3;
    ngr::io::write_image(ngr::degrade::synthetic_image(h, w, c), argv[1]);
    return 0;
}
