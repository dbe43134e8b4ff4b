#include "jetflow/config.hpp"
