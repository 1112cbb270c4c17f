#pragma once

#include "cyclo/abelian_group.hpp"
#include "cyclo/bigint.hpp"
#include "cyclo/bivar_poly.hpp"
#include "cyclo/carries.hpp"
#include "cyclo/critgroup.hpp"
#include "cyclo/ell3.hpp"
#include "cyclo/error.hpp"
#include "cyclo/field.hpp"
#include "cyclo/galois_ring.hpp"
#include "cyclo/graph.hpp"
#include "cyclo/json_io.hpp"
#include "cyclo/kirchhoff.hpp"
#include "cyclo/matrix.hpp"
#include "cyclo/multiplicities.hpp"
#include "cyclo/params.hpp"
#include "cyclo/snf.hpp"
