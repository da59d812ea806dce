#include "ecgsep/parallel.hpp"

namespace ecgsep {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

} // namespace ecgsep
