#include "jnbellman/quadrature.hpp"
