#pragma once

#include "dglinf/rational.hpp"
#include "dglinf/graded.hpp"
#include "dglinf/exterior.hpp"
#include "dglinf/cohomology.hpp"
#include "dglinf/artin.hpp"
#include "dglinf/dgla.hpp"
#include "dglinf/mc.hpp"
#include "dglinf/symcoalg.hpp"
#include "dglinf/linfty.hpp"
#include "dglinf/hitchin.hpp"
