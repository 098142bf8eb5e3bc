import datetime
import json
import logging
import os
import time
from concurrent.futures import Executor
from typing import Optional

from sqlalchemy import Column, DateTime, Float, Integer, Text, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from app.core.genfun import RatFun, compute_Fs
from app.utils.formatting import poly_from_json, poly_to_json

logger = logging.getLogger(__name__)

# Empty path disables the cache
CACHE_PATH = os.getenv("CHEBYGF_CACHE_PATH", "")

Session = sessionmaker()
Base = declarative_base()
_engine = None


def _utcnow():
    return datetime.datetime.now(datetime.timezone.utc)


class GeneratingFunctionRecord(Base):
    __tablename__ = "generating_functions"

    id = Column(Integer, primary_key=True)
    s = Column(Integer, unique=True, nullable=False)
    numerator = Column(Text, nullable=False)
    denominator = Column(Text, nullable=False)
    elapsed_seconds = Column(Float)

    created_at = Column(DateTime, default=_utcnow)


def init_database(path: str = CACHE_PATH) -> bool:
    """Open (or create) the SQLite cache at ``path``."""
    global _engine
    if not path:
        logger.info("Result cache disabled")
        close_database()
        return False
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        engine = create_engine(f"sqlite:///{path}", echo=False)
        Base.metadata.create_all(engine)
        close_database()
        _engine = engine
        Session.configure(bind=engine)
        logger.info(f"Result cache initialized at {path}")
        return True
    except Exception as e:
        logger.error(f"Error initializing result cache: {str(e)}")
        return False


def close_database() -> None:
    global _engine
    if _engine is not None:
        _engine.dispose()
    _engine = None


def cache_enabled() -> bool:
    return _engine is not None


def get_session():
    """Get a database session."""
    return Session()


def load_generating_function(s: int) -> Optional[RatFun]:
    """Cached canonical F_s, or None on a miss, a disabled cache or a bad record."""
    if not cache_enabled():
        return None
    try:
        with get_session() as session:
            record = session.query(GeneratingFunctionRecord).filter_by(s=s).first()
            if record is None:
                logger.debug(f"cache miss for s={s}")
                return None
            F = RatFun(
                poly_from_json(json.loads(record.numerator)),
                poly_from_json(json.loads(record.denominator)),
            )
        logger.debug(f"cache hit for s={s}")
        return F
    except Exception as e:
        logger.error(f"Error reading cached F_{s}: {str(e)}")
        return None


def store_generating_function(s: int, F: RatFun, elapsed: float) -> bool:
    if not cache_enabled():
        return False
    try:
        with get_session() as session:
            record = session.query(GeneratingFunctionRecord).filter_by(s=s).first()
            if record is None:
                record = GeneratingFunctionRecord(s=s)
                session.add(record)
            record.numerator = json.dumps(poly_to_json(F.numerator))
            record.denominator = json.dumps(poly_to_json(F.denominator))
            record.elapsed_seconds = elapsed
            session.commit()
        logger.debug(f"stored F_{s} ({elapsed:.3f}s)")
        return True
    except Exception as e:
        logger.error(f"Error storing F_{s}: {str(e)}")
        return False


def cached_compute_Fs(s: int, executor: Optional[Executor] = None) -> RatFun:
    """compute_Fs through the cache; a stored value is the same canonical form."""
    F = load_generating_function(s)
    if F is not None:
        return F
    start = time.perf_counter()
    F = compute_Fs(s, executor)
    store_generating_function(s, F, time.perf_counter() - start)
    return F
