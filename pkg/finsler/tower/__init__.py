from finsler.tower.jet import Jet, MAX_ORDER
from finsler.tower.functions import sqrt, exp, log, sin, cos, tanh, absolute, power, divide, value_of, is_jet
from finsler.tower.derive import derive, fd_oracle, taylor_compose, seed, MAX_DERIVE_ORDER
from finsler.tower import linalg
