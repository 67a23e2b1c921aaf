#pragma once

#include "trcomm/certificate.hpp"
#include "trcomm/error.hpp"
#include "trcomm/field.hpp"
#include "trcomm/io.hpp"
#include "trcomm/matrix.hpp"
#include "trcomm/mis.hpp"
#include "trcomm/oracle.hpp"
#include "trcomm/packing.hpp"
#include "trcomm/polynomial.hpp"
#include "trcomm/ring.hpp"
#include "trcomm/witness.hpp"
