#include <iostream>

#include "gmms/acceptance.hpp"

int main() {
    const bool ok = gmms::run_acceptance(std::cout);
    return ok ? 0 : 1;
}
