"""Python bindings for the cluster scheduling engine."""

try:
    from . import _pyeva as _m  # installed wheel layout
except ImportError:  # CMake build tree on sys.path
    import _pyeva as _m

__all__ = [
    "AssignedInstance",
    "ClusterConfiguration",
    "CoLocationTable",
    "EvaError",
    "InstanceType",
    "ResourceVector",
    "Task",
    "default_catalog",
    "exact_min_cost",
    "full_reconfiguration",
    "generate_trace",
    "load_catalog",
    "no_packing_schedule",
    "reservation_price",
    "simulate",
]

for _name in __all__:
    globals()[_name] = getattr(_m, _name)
del _name, _m
