#include "jetflow/integrator.hpp"
