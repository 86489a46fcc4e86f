"""chinpoint: a chin/lip/tongue body-machine interface pipeline.

Sensor frames travel over a framed binary wire protocol, get smoothed and
thresholded into pointer/click/Z control events, drive two evaluation
tasks (2D reach-and-click, 3D reach-and-hold), and feed a Fitts'-law
analytics engine validated end to end by synthetic operator agents.
"""

from .agents import AgentParams, ArmAgent, ArmAgentParams, PointingAgent
from .events import (ClickPress, ClickRelease, ControlEvent, Mode, ModeToggle,
                     PointerDelta, ZDelta, event_from_dict, event_to_dict)
from .filters import OneEuroFilter
from .fitts import (condition_stats, effective_id, error_rate,
                    exclusion_filter, fit_fitts, nominal_id, throughput)
from .frames import SensorFrame
from .profile import CalibrationProfile, load_profile, save_profile
from .service import SessionConfig, run_session
from .sessionlog import (SessionLog, SessionLogWriter, load_session_log,
                         parse_session_log)
from .simulate import (GestureScript, NoiseModel, Segment, corrupt,
                       load_script, stream_over_wire, synthesize)
from .stats import wilcoxon_rank_sum, wilcoxon_signed_rank
from .tasks import (ArmTask, PointingTask, TargetSpec2D, TargetSpec3D,
                    TrialRecord2D, TrialRecord3D, generate_target_set_2d,
                    generate_target_set_3d, mean_completion_time)
from .translator import FilteredFrame, Translator, UncalibratedError
from .wire import BACKEND as WIRE_BACKEND
from .wire import DecoderState, crc8, decode_stream, encode_frame

__version__ = "0.1.0"

__all__ = [
    "AgentParams",
    "ArmAgent",
    "ArmAgentParams",
    "ArmTask",
    "CalibrationProfile",
    "ClickPress",
    "ClickRelease",
    "ControlEvent",
    "DecoderState",
    "FilteredFrame",
    "GestureScript",
    "Mode",
    "ModeToggle",
    "NoiseModel",
    "OneEuroFilter",
    "PointerDelta",
    "PointingAgent",
    "PointingTask",
    "Segment",
    "SensorFrame",
    "SessionConfig",
    "SessionLog",
    "SessionLogWriter",
    "TargetSpec2D",
    "TargetSpec3D",
    "Translator",
    "TrialRecord2D",
    "TrialRecord3D",
    "UncalibratedError",
    "WIRE_BACKEND",
    "ZDelta",
    "__version__",
    "condition_stats",
    "corrupt",
    "crc8",
    "decode_stream",
    "effective_id",
    "encode_frame",
    "error_rate",
    "event_from_dict",
    "event_to_dict",
    "exclusion_filter",
    "fit_fitts",
    "generate_target_set_2d",
    "generate_target_set_3d",
    "load_profile",
    "load_script",
    "load_session_log",
    "mean_completion_time",
    "nominal_id",
    "parse_session_log",
    "run_session",
    "save_profile",
    "stream_over_wire",
    "synthesize",
    "throughput",
    "wilcoxon_rank_sum",
    "wilcoxon_signed_rank",
]
