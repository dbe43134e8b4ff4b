#include "jetflow/verifier.hpp"
