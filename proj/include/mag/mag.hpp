#pragma once

#include "mag/bitstring.hpp"
#include "mag/charstring.hpp"
#include "mag/core.hpp"
#include "mag/error.hpp"
#include "mag/kproxy.hpp"
#include "mag/randgen.hpp"
#include "mag/report.hpp"
#include "mag/snapshot.hpp"
#include "mag/topo.hpp"
