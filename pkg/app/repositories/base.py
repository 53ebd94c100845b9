import logging
from pathlib import Path
from typing import Any, Dict, Generic, List, Optional, Type, TypeVar
from uuid import UUID, uuid4

from pydantic import BaseModel

from app.core.config import get_settings

logger = logging.getLogger(__name__)

ModelType = TypeVar("ModelType", bound=BaseModel)


class BaseRepository(Generic[ModelType]):
    """JSON documents on disk, one file per object, under REPORT_DIR/<collection>"""

    collection: str = "objects"

    def __init__(self, model: Type[ModelType], root: Optional[Path] = None):
        self.model = model
        self.root = Path(root or get_settings().REPORT_DIR) / self.collection
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, obj_id: UUID) -> Path:
        return self.root / f"{obj_id}.json"

    def _load(self, path: Path) -> ModelType:
        return self.model.model_validate_json(path.read_text())

    async def create(self, obj: ModelType, obj_id: Optional[UUID] = None) -> UUID:
        """Store object and return its id"""
        obj_id = obj_id or uuid4()
        self._path(obj_id).write_text(obj.model_dump_json(indent=2))
        logger.info(f"Stored {self.model.__name__} {obj_id}")
        return obj_id

    async def get_by_id(self, obj_id: UUID) -> Optional[ModelType]:
        """Get object by ID"""
        path = self._path(obj_id)
        if not path.exists():
            return None
        return self._load(path)

    async def get_all(
            self,
            skip: int = 0,
            limit: int = 100,
            filters: Optional[Dict[str, Any]] = None
    ) -> List[ModelType]:
        """Get all objects with pagination and optional filters on top-level fields"""
        out = []
        for path in sorted(self.root.glob("*.json")):
            obj = self._load(path)
            if filters and any(getattr(obj, key, None) != value for key, value in filters.items()):
                continue
            out.append(obj)
        return out[skip:skip + limit]

    async def count(self, filters: Optional[Dict[str, Any]] = None) -> int:
        """Count stored objects with optional filters"""
        return len(await self.get_all(limit=10 ** 9, filters=filters))

    async def delete(self, obj_id: UUID) -> bool:
        """Delete object; False when it did not exist"""
        path = self._path(obj_id)
        if not path.exists():
            return False
        path.unlink()
        return True
