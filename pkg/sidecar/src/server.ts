import { createApp } from "./app.js";

const port = Number(process.env.PORT ?? 8901);
const app = createApp();

app.listen(port, () => {
  console.log(`classifier sidecar listening on :${port}`);
});
