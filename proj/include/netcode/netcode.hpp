#pragma once

#include "netcode/binpoly.hpp"
#include "netcode/code.hpp"
#include "netcode/construct.hpp"
#include "netcode/coprime.hpp"
#include "netcode/error.hpp"
#include "netcode/gf2k.hpp"
#include "netcode/io.hpp"
#include "netcode/matrix.hpp"
#include "netcode/nec.hpp"
#include "netcode/network.hpp"
#include "netcode/poly_matrix.hpp"
#include "netcode/reduction.hpp"
#include "netcode/report.hpp"
