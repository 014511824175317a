#pragma once

#include "gbec/bose_special.hpp"
#include "gbec/channel.hpp"
#include "gbec/cigar.hpp"
#include "gbec/errors.hpp"
#include "gbec/general_box.hpp"
#include "gbec/isotropic.hpp"
#include "gbec/numerics.hpp"
#include "gbec/oracle.hpp"
#include "gbec/prism.hpp"
#include "gbec/run.hpp"
#include "gbec/sweep.hpp"
