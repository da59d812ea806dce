#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
#ifdef _OPENMP
    // force real threading for the serial-vs-parallel checks even when
    // the machine exposes a single core
    omp_set_num_threads(4);
#endif
    return doctest::Context(argc, argv).run();
}
