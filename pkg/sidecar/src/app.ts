import express, { Express } from "express";
import { z } from "zod";

import { FORMALITY_MODEL_VERSION, scoreFormality } from "./formality.js";
import { classifyNarrative, NARRATIVE_MODEL_VERSION } from "./narrative.js";

export const BATCH_LIMIT = 256;

const ClassifyRequest = z.object({
  task: z.enum(["formality", "narrative"]),
  sentences: z.array(z.string()).min(1).max(BATCH_LIMIT),
});

const MODEL_VERSION = `${FORMALITY_MODEL_VERSION};${NARRATIVE_MODEL_VERSION}`;

export function createApp(): Express {
  const app = express();
  app.use(express.json({ limit: "2mb" }));

  app.get("/health", (_req, res) => {
    res.json({ status: "ok", model_version: MODEL_VERSION });
  });

  app.post("/classify", (req, res) => {
    const parsed = ClassifyRequest.safeParse(req.body);
    if (!parsed.success) {
      res.status(400).json({ error: "invalid-request", detail: parsed.error.issues });
      return;
    }
    const { task, sentences } = parsed.data;
    if (task === "formality") {
      res.json({
        scores: sentences.map(scoreFormality),
        model_version: FORMALITY_MODEL_VERSION,
      });
    } else {
      res.json({
        labels: sentences.map(classifyNarrative),
        model_version: NARRATIVE_MODEL_VERSION,
      });
    }
  });

  // malformed JSON bodies surface as 400, not a stack trace
  app.use((err: Error, _req: express.Request, res: express.Response, next: express.NextFunction) => {
    if (err instanceof SyntaxError) {
      res.status(400).json({ error: "invalid-json" });
      return;
    }
    next(err);
  });

  return app;
}
