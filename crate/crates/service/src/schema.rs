//! JSON Schemas for every body the API reads or writes.

use serde_json::{json, Value};

fn ids() -> Value {
    json!({ "type": "array", "items": { "$ref": "#/definitions/RootId" }, "uniqueItems": true })
}

/// All schemas keyed by name, in draft-07 form.
pub fn all() -> Value {
    json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "definitions": {
            "RootId": { "type": "integer", "minimum": 0 },
            "RootSet": ids(),
            "Mode": { "type": "string", "enum": ["top", "free"] },
            "Step": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["kind", "ideal"],
                        "properties": { "kind": { "const": "split" }, "ideal": { "$ref": "#/definitions/RootSet" } }
                    },
                    {
                        "type": "object",
                        "required": ["kind", "beta", "region"],
                        "properties": {
                            "kind": { "const": "move" },
                            "beta": { "$ref": "#/definitions/RootId" },
                            "region": { "type": "integer", "minimum": 0 }
                        }
                    },
                    {
                        "type": "object",
                        "required": ["kind", "region", "from_copy", "to_copy"],
                        "properties": {
                            "kind": { "const": "merge" },
                            "region": { "type": "integer", "minimum": 0 },
                            "from_copy": { "type": "integer", "minimum": 1 },
                            "to_copy": { "type": "integer", "minimum": 1 }
                        }
                    }
                ]
            },
            "Position": {
                "type": "object",
                "required": ["embedding", "regions", "tokens", "mode", "history"],
                "properties": {
                    "embedding": { "type": "string" },
                    "regions": { "type": "array", "items": { "$ref": "#/definitions/RootSet" } },
                    "tokens": { "$ref": "#/definitions/RootSet" },
                    "mode": { "$ref": "#/definitions/Mode" },
                    "history": { "type": "array", "items": { "$ref": "#/definitions/Step" } }
                }
            },
            "Status": {
                "oneOf": [
                    { "type": "object", "required": ["verdict"], "properties": { "verdict": { "enum": ["won", "open"] } } },
                    {
                        "type": "object",
                        "required": ["verdict", "witness", "tokens", "capacity"],
                        "properties": {
                            "verdict": { "const": "lost" },
                            "witness": { "$ref": "#/definitions/RootSet" },
                            "tokens": { "type": "integer" },
                            "capacity": { "type": "integer" }
                        }
                    }
                ]
            },
            "Obstruction": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["kind", "root"],
                        "properties": { "kind": { "const": "zero" }, "root": { "$ref": "#/definitions/RootId" } }
                    },
                    {
                        "type": "object",
                        "required": ["kind", "a", "b"],
                        "properties": {
                            "kind": { "const": "collision" },
                            "a": { "$ref": "#/definitions/RootId" },
                            "b": { "$ref": "#/definitions/RootId" }
                        }
                    }
                ]
            },
            "Verdict": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["verdict", "witness", "tokens", "capacity"],
                        "properties": {
                            "verdict": { "const": "doomed" },
                            "witness": { "$ref": "#/definitions/RootSet" },
                            "tokens": { "type": "integer" },
                            "capacity": { "type": "integer" }
                        }
                    },
                    {
                        "type": "object",
                        "required": ["verdict", "certificate"],
                        "properties": {
                            "verdict": { "const": "won" },
                            "certificate": { "type": "array", "items": { "$ref": "#/definitions/Step" } }
                        }
                    },
                    {
                        "type": "object",
                        "required": ["verdict", "explored"],
                        "properties": {
                            "verdict": { "enum": ["not_winnable", "unknown"] },
                            "explored": { "type": "integer" }
                        }
                    }
                ]
            },
            "Square": {
                "type": "object",
                "required": ["id", "name", "component", "row", "col", "height"],
                "properties": {
                    "id": { "$ref": "#/definitions/RootId" },
                    "name": { "type": "string" },
                    "component": { "type": "integer", "minimum": 0 },
                    "row": { "type": "integer", "minimum": 1 },
                    "col": { "type": "integer", "minimum": 1 },
                    "height": { "type": "integer", "minimum": 1 }
                }
            },
            "Board": {
                "type": "object",
                "required": ["group", "rows", "cols", "squares"],
                "properties": {
                    "group": { "type": "string" },
                    "rows": { "type": "integer" },
                    "cols": { "type": "integer" },
                    "squares": { "type": "array", "items": { "$ref": "#/definitions/Square" } }
                }
            },
            "Layout": {
                "type": "object",
                "required": ["embedding", "target", "source", "phat", "copies", "identity_diagonal"],
                "properties": {
                    "embedding": { "type": "string" },
                    "target": { "$ref": "#/definitions/Board" },
                    "source": { "$ref": "#/definitions/Board" },
                    "phat": { "type": "array", "items": { "type": ["integer", "null"], "minimum": 0 } },
                    "copies": { "type": "integer", "minimum": 1 },
                    "identity_diagonal": { "type": "boolean" }
                }
            },
            "CreateRequest": {
                "type": "object",
                "required": ["embedding", "pi"],
                "properties": {
                    "embedding": { "type": "string" },
                    "pi": { "type": "string" },
                    "mode": { "$ref": "#/definitions/Mode" }
                }
            },
            "StepRequest": {
                "description": "A Step with an optional expected revision.",
                "allOf": [
                    { "$ref": "#/definitions/Step" },
                    { "type": "object", "properties": { "revision": { "type": "integer", "minimum": 0 } } }
                ]
            },
            "Session": {
                "type": "object",
                "required": ["id", "revision", "pi", "position", "status", "created_ms", "updated_ms"],
                "properties": {
                    "id": { "type": "string" },
                    "revision": { "type": "integer", "minimum": 0 },
                    "pi": { "type": "string" },
                    "position": { "$ref": "#/definitions/Position" },
                    "status": { "$ref": "#/definitions/Status" },
                    "obstruction": { "$ref": "#/definitions/Obstruction" },
                    "labels": { "type": "string" },
                    "layout": { "$ref": "#/definitions/Layout" },
                    "created_ms": { "type": "integer" },
                    "updated_ms": { "type": "integer" }
                }
            },
            "Hints": {
                "type": "object",
                "required": ["id", "revision", "legal_moves", "legal_merges", "qualifying_splits"],
                "properties": {
                    "id": { "type": "string" },
                    "revision": { "type": "integer" },
                    "legal_moves": { "type": "array", "items": { "$ref": "#/definitions/Step" } },
                    "legal_merges": { "type": "array", "items": { "$ref": "#/definitions/Step" } },
                    "qualifying_splits": { "type": "array", "items": { "$ref": "#/definitions/RootSet" } },
                    "solver_verdict": { "$ref": "#/definitions/Verdict" }
                }
            },
            "Error": {
                "type": "object",
                "required": ["error", "reason"],
                "properties": {
                    "error": { "type": "string" },
                    "reason": { "type": "string" },
                    "revision": { "type": "integer" }
                }
            }
        },
        "routes": {
            "POST /sessions": { "request": "CreateRequest", "response": "Session", "status": 201 },
            "GET /sessions/{id}": { "response": "Session" },
            "DELETE /sessions/{id}": { "status": 204 },
            "POST /sessions/{id}/steps": { "request": "StepRequest", "response": "Session" },
            "POST /sessions/{id}/undo": { "query": { "revision": "integer" }, "response": "Session" },
            "GET /sessions/{id}/hints": { "query": { "budget": "integer", "merges": "boolean" }, "response": "Hints" },
            "GET /layouts": { "query": { "embedding": "string" }, "response": "Layout" },
            "GET /schema": {}
        }
    })
}
