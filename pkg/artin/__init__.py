from .certifier import certify_free, check_certificate, tree_elliptic, vertex_elliptic, FreenessCertificate
from .exceptions import *
from .garside import normal_form, equals, classify_elliptic
from .logger import logger, VERBOSE_LOG_LEVEL
from .presentation import PresentationGraph, parse_graph, is_two_dimensional, is_hyperbolic_type

__version__ = '0.1.0'
